#include "rwadyn/memory_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rwadyn {

DriveFunction DriveFunction::zero() { return DriveFunction{}; }

DriveFunction DriveFunction::bath_mode(cplx coupling, double frequency) {
    DriveFunction d;
    d.fn = [coupling, frequency](double t) { return coupling * std::polar(1.0, -frequency * t); };
    d.mode = Mode{coupling, frequency};
    return d;
}

void validate(const SolverConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw DomainError("solver: dt must be positive");
    if (cfg.corrector_iterations < 1)
        throw DomainError("solver: corrector_iterations must be >= 1");
}

namespace {

void check_grid(const KernelSamples& kernel, std::size_t count, const SolverConfig& cfg) {
    if (count < 1) throw DimensionError("solver: at least one sample required");
    if (!same_step(kernel.dt, cfg.dt)) {
        std::ostringstream os;
        os << "solver: kernel step " << kernel.dt << " differs from solver step " << cfg.dt;
        throw DimensionError(os.str());
    }
    if (kernel.size() < count) {
        std::ostringstream os;
        os << "solver: kernel holds " << kernel.size() << " samples, " << count << " required";
        throw DimensionError(os.str());
    }
}

// Core recursion in the frame rotating at omega. Kernel samples are read with
// `stride` so the same kernel can drive a 2*dt solve.
std::vector<cplx> integrate(double omega, const KernelSamples& kernel, std::size_t stride,
                            const DriveFunction& drive, cplx initial, std::size_t count,
                            double dt, int corrector_iterations) {
    const cplx i{0.0, 1.0};
    std::vector<cplx> k(count);
    for (std::size_t m = 0; m < count; ++m)
        k[m] = kernel.values[m * stride] * std::polar(1.0, omega * dt * static_cast<double>(m));

    auto rotated_drive = [&](std::size_t n) {
        if (!drive.fn) return cplx{};
        const double t = dt * static_cast<double>(n);
        return std::polar(1.0, omega * t) * drive(t);
    };

    std::vector<cplx> y(count);
    y[0] = initial;
    cplx rhs = -i * rotated_drive(0);
    const double half_dt = 0.5 * dt;
    for (std::size_t n = 0; n + 1 < count; ++n) {
        // history part of int_0^{t_{n+1}} k(t_{n+1} - s) y(s) ds, trapezoid weights
        cplx history = 0.5 * k[n + 1] * y[0];
        for (std::size_t j = 1; j <= n; ++j) history += k[n + 1 - j] * y[j];
        const cplx forcing = -i * rotated_drive(n + 1);

        auto rhs_at = [&](cplx y_next) { return -dt * (history + 0.5 * k[0] * y_next) + forcing; };

        cplx y_next = y[n] + dt * rhs;
        for (int it = 0; it < corrector_iterations; ++it)
            y_next = y[n] + half_dt * (rhs + rhs_at(y_next));
        y[n + 1] = y_next;
        rhs = rhs_at(y_next);
    }

    for (std::size_t n = 0; n < count; ++n)
        y[n] *= std::polar(1.0, -omega * dt * static_cast<double>(n));
    y[0] = initial;
    return y;
}

}  // namespace

Trajectory solve_driven_amplitude(double omega, const KernelSamples& kernel,
                                  const DriveFunction& drive, cplx initial, std::size_t count,
                                  const SolverConfig& cfg) {
    validate(cfg);
    if (!std::isfinite(omega)) throw DomainError("solver: omega must be finite");
    check_grid(kernel, count, cfg);

    Trajectory traj;
    traj.dt = cfg.dt;
    traj.values = integrate(omega, kernel, 1, drive, initial, count, cfg.dt,
                            cfg.corrector_iterations);

    if (cfg.refine && count >= 3) {
        const std::size_t coarse_count = (count + 1) / 2;
        const auto coarse = integrate(omega, kernel, 2, drive, initial, coarse_count,
                                      2.0 * cfg.dt, cfg.corrector_iterations);
        double diff = 0.0;
        for (std::size_t m = 0; m < coarse_count; ++m)
            diff = std::max(diff, std::abs(traj.values[2 * m] - coarse[m]));
        traj.error_estimate = diff / 3.0;
    }
    return traj;
}

Trajectory solve_amplitude(double omega, const KernelSamples& kernel, std::size_t count,
                           const SolverConfig& cfg) {
    return solve_driven_amplitude(omega, kernel, DriveFunction::zero(), cplx{1.0, 0.0}, count,
                                  cfg);
}

Trajectory analytic_exponential_amplitude(double omega, double coupling, double width,
                                          const TimeGrid& grid) {
    validate(grid);
    if (!(coupling >= 0.0) || !(width > 0.0))
        throw DomainError("analytic amplitude: need coupling >= 0 and width > 0");
    const cplx d = std::sqrt(cplx{width * width / 16.0 - coupling * coupling, 0.0});
    Trajectory traj;
    traj.dt = grid.dt;
    traj.values.resize(grid.count);
    for (std::size_t n = 0; n < grid.count; ++n) {
        const double t = grid.time(n);
        const cplx s = d * t;
        // sinh(s)/s, series near the critical point d = 0
        const cplx sinhc = std::abs(s) < 1e-4 ? 1.0 + s * s / 6.0 + s * s * s * s / 120.0
                                              : std::sinh(s) / s;
        const cplx envelope = std::cosh(s) + 0.25 * width * t * sinhc;
        traj.values[n] = std::polar(std::exp(-0.25 * width * t), -omega * t) * envelope;
    }
    return traj;
}

}  // namespace rwadyn
