// observables.hpp: excited-state population and oscillator moments from a solved
// amplitude and a thermal kernel

#pragma once

#include <optional>
#include <vector>

#include "rwadyn/bath.hpp"
#include "rwadyn/common.hpp"
#include "rwadyn/memory_solver.hpp"

namespace rwadyn {

struct FriedrichsInitial {
    double p{0.3};  // initial excited-state weight
    double z{1.0};  // partition constant of the restricted bath state
    double beta{1.0};
};

void validate(const FriedrichsInitial& init);

struct OscillatorInitial {
    cplx mean_a{};         // <a(0)>
    double number{0.0};    // <a^dagger a(0)>
    cplx mean_aa{};        // <a(0)^2>
};

void validate(const OscillatorInitial& init);

struct ObservableSeries {
    double dt{0.0};
    std::vector<double> population;  // rho_11 or <a^dagger a>
    std::optional<std::vector<cplx>> mean_a;
    std::optional<std::vector<cplx>> mean_aa;

    std::size_t size() const { return population.size(); }
};

// F(t) = 2 Re int_0^t dtau int_0^tau ds K(tau - s) x*(tau) x(s).
//
// The conjugate sits on the later time: this is the ordering that follows from
// substituting psi_{1,k} into sum_k w_k |psi_{1,k}|^2, and it is resonant when K
// and x rotate at the same frequency.
std::vector<double> thermal_injection(const Trajectory& x, const KernelSamples& kernel);

// rho_11(t) = (p |x|^2 + (1 - p) F[G_beta^1](t)) / Z
ObservableSeries excited_population(const Trajectory& x, const KernelSamples& restricted_kernel,
                                    const FriedrichsInitial& init);

// <a(t)> = x <a(0)>,  <a^dagger a>(t) = |x|^2 <a^dagger a(0)> + F[G_beta^inf](t),
// <a(t)^2> = x^2 <a(0)^2>
ObservableSeries oscillator_moments(const Trajectory& x, const KernelSamples& full_kernel,
                                    const OscillatorInitial& init);

// psi_{1,k}(t) = -i g_k int_0^t x(t - s) e^{-i w_k s} ds
Trajectory one_photon_amplitude(const Trajectory& x, cplx coupling, double frequency);

}  // namespace rwadyn
