// oracle.hpp: brute-force reference: a finite set of bath modes coupled to one
// level, propagated directly in the one-excitation sector (no memory kernel).

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rwadyn/bath.hpp"
#include "rwadyn/common.hpp"
#include "rwadyn/observables.hpp"

namespace rwadyn {

struct DiscreteBath {
    std::vector<double> frequencies;  // panel midpoints, strictly increasing, > 0
    std::vector<double> couplings;    // sqrt(J(w_j) dw / 2 pi)
    FrequencyWindow window{};
    double spacing{0.0};

    std::size_t size() const { return frequencies.size(); }
    double recurrence_time() const { return kTwoPi / spacing; }
    // sum_j g_j^2 e^{-i w_j t}
    cplx kernel(double t) const;
};

// Midpoint sampling of J on `window`, which must lie inside the density's support.
DiscreteBath discretize_bath(const SpectralDensity& spec, std::size_t modes,
                             FrequencyWindow window);

struct PropagationConfig {
    double max_phase_step{0.1};  // bound on h * ||H|| for automatic substepping
    std::size_t substeps{0};     // substeps per grid step; 0 picks from max_phase_step
};

struct PropagationStats {
    std::size_t substeps{0};
    double step{0.0};
    double max_norm_drift{0.0};  // max_n | ||psi(t_n)||^2 - 1 |
};

// Propagates |psi(0)> = |1> under the arrowhead Hamiltonian with classical RK4.
// The observer sees the state at every grid time: state[0] = psi_{1,1},
// state[1 + j] = psi_{1,k_j} (the propagator is symmetric, so the column from |1>
// equals the row into <1|).
PropagationStats propagate_one_excitation(
    const DiscreteBath& bath, double omega, const TimeGrid& grid, const PropagationConfig& cfg,
    const std::function<void(std::size_t, std::span<const cplx>)>& observer);

struct OneExcitationHistory {
    std::vector<cplx> system;              // psi_{1,1}(t_n)
    std::vector<std::vector<cplx>> modes;  // modes[n][j] = psi_{1,k_j}(t_n)
    PropagationStats stats;
};

// Stores every amplitude; meant for small baths.
OneExcitationHistory propagate_one_excitation(const DiscreteBath& bath, double omega,
                                              const TimeGrid& grid,
                                              const PropagationConfig& cfg = {});

ObservableSeries oracle_population(const DiscreteBath& bath, double omega,
                                   const FriedrichsInitial& init, const TimeGrid& grid,
                                   const PropagationConfig& cfg = {},
                                   PropagationStats* stats = nullptr);

ObservableSeries oracle_oscillator_moments(const DiscreteBath& bath, double omega, double beta,
                                           const OscillatorInitial& init, const TimeGrid& grid,
                                           const PropagationConfig& cfg = {},
                                           PropagationStats* stats = nullptr);

}  // namespace rwadyn
