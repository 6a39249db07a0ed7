// memory_solver.hpp: scalar Volterra integro-differential equations with a memory kernel
//
//   d/dt psi(t) = -i Omega psi(t) - i f(t) - int_0^t G(t - tau) psi(tau) dtau
//
// solved on the kernel's uniform grid. The free rotation is removed exactly
// (psi = e^{-i Omega t} y), the memory integral uses the trapezoidal product rule
// and time stepping is a trapezoidal predictor-corrector.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rwadyn/bath.hpp"
#include "rwadyn/common.hpp"

namespace rwadyn {

struct Trajectory {
    double dt{0.0};
    std::vector<cplx> values;

    // Richardson estimate max_n |psi_dt - psi_2dt| / 3, filled when refinement is on.
    std::optional<double> error_estimate;

    std::size_t size() const { return values.size(); }
    const cplx& operator[](std::size_t n) const { return values[n]; }
};

// A drive f(t). When it represents a single bath mode g_k e^{-i w_k t} the mode
// parameters are kept alongside the callable.
struct DriveFunction {
    struct Mode {
        cplx coupling;
        double frequency;
    };

    std::function<cplx(double)> fn;
    std::optional<Mode> mode;

    static DriveFunction zero();
    static DriveFunction bath_mode(cplx coupling, double frequency);

    cplx operator()(double t) const { return fn ? fn(t) : cplx{}; }
};

struct SolverConfig {
    double dt{1e-3};
    int corrector_iterations{2};
    bool refine{false};  // also solve at 2*dt and report a Richardson estimate
};

void validate(const SolverConfig& cfg);

// x(t) with x(0) = 1 and f = 0. `count` samples; the kernel must share dt and hold
// at least `count` samples.
Trajectory solve_amplitude(double omega, const KernelSamples& kernel, std::size_t count,
                           const SolverConfig& cfg);

Trajectory solve_driven_amplitude(double omega, const KernelSamples& kernel,
                                  const DriveFunction& drive, cplx initial, std::size_t count,
                                  const SolverConfig& cfg);

// Closed-form x(t) for the exponential kernel g^2 e^{-gamma t/2} e^{-i Omega t} at
// resonance:
//   x = e^{-i Omega t} e^{-gamma t/4} [cosh(d t) + gamma/(4 d) sinh(d t)],
//   d = sqrt(gamma^2/16 - g^2), with the d -> 0 limit taken analytically.
Trajectory analytic_exponential_amplitude(double omega, double coupling, double width,
                                          const TimeGrid& grid);

}  // namespace rwadyn
