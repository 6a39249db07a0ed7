#include <cmath>

#include "doctest.h"
#include "reference.hpp"
#include "rwadyn/memory_solver.hpp"

using namespace rwadyn;

namespace {

constexpr double kOmega = 5.0;

KernelSamples zero_kernel(double dt, std::size_t count) {
    KernelSamples k;
    k.dt = dt;
    k.values.assign(count, cplx{});
    return k;
}

KernelSamples exponential_kernel(double g, double dt, std::size_t count) {
    return full_line_lorentz_samples(SpectralDensity::lorentz(g, 1.0, kOmega), TimeGrid{dt, count});
}

double max_error(const Trajectory& a, const Trajectory& b) {
    double m = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
    return m;
}

std::size_t steps(double t_max, double dt) { return static_cast<std::size_t>(std::llround(t_max / dt)) + 1; }

}  // namespace

TEST_CASE("free evolution for a vanishing kernel") {
    const double dt = 1e-3;
    const auto x = solve_amplitude(kOmega, zero_kernel(dt, 10001), 10001, {dt});
    CHECK(x[0] == cplx{1.0, 0.0});
    for (std::size_t n = 0; n < x.size(); n += 250) {
        CHECK(std::abs(x[n] - std::polar(1.0, -kOmega * dt * n)) < 1e-14);
        CHECK(std::abs(std::abs(x[n]) - 1.0) < 1e-14);
    }
}

TEST_CASE("exponential kernel matches the analytic amplitude") {
    const double dt = 1e-3;
    const std::size_t n = steps(10.0, dt);
    for (double g : {0.1, 0.25, 1.0}) {
        CAPTURE(g);
        const auto x = solve_amplitude(kOmega, exponential_kernel(g, dt, n), n, {dt});
        const auto exact = analytic_exponential_amplitude(kOmega, g, 1.0, TimeGrid{dt, n});
        CHECK(max_error(x, exact) <= 1e-6);
    }
    // strong coupling: vacuum Rabi frequency 2g, error grows like (g dt)^2
    const auto x = solve_amplitude(kOmega, exponential_kernel(4.0, dt, n), n, {dt});
    CHECK(max_error(x, analytic_exponential_amplitude(kOmega, 4.0, 1.0, TimeGrid{dt, n})) <= 2e-5);
}

TEST_CASE("second-order convergence") {
    const double g = 1.0;
    double errors[2];
    for (int level = 0; level < 2; ++level) {
        const double dt = 2e-2 / (1 << level);
        const std::size_t n = steps(10.0, dt);
        const auto x = solve_amplitude(kOmega, exponential_kernel(g, dt, n), n, {dt});
        errors[level] = max_error(x, analytic_exponential_amplitude(kOmega, g, 1.0, TimeGrid{dt, n}));
    }
    const double ratio = errors[0] / errors[1];
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}

TEST_CASE("analytic amplitude special cases") {
    const TimeGrid grid{1e-2, 1001};
    const auto critical = analytic_exponential_amplitude(kOmega, 0.25, 1.0, grid);
    const auto free = analytic_exponential_amplitude(kOmega, 0.0, 1.0, grid);
    CHECK(critical[0] == cplx{1.0, 0.0});
    for (std::size_t n = 0; n < grid.count; n += 50) {
        const double t = grid.time(n);
        const cplx expected = std::polar(std::exp(-t / 4) * (1 + t / 4), -kOmega * t);
        CHECK(std::abs(critical[n] - expected) < 1e-13);
        CHECK(std::abs(free[n] - std::polar(1.0, -kOmega * t)) < 1e-13);
    }
    // continuity across the critical point
    const auto below = analytic_exponential_amplitude(kOmega, 0.25 - 1e-7, 1.0, grid);
    const auto above = analytic_exponential_amplitude(kOmega, 0.25 + 1e-7, 1.0, grid);
    CHECK(max_error(below, critical) < 1e-6);
    CHECK(max_error(above, critical) < 1e-6);
    CHECK_THROWS_AS(analytic_exponential_amplitude(kOmega, 1.0, 0.0, grid), DomainError);
}

TEST_CASE("refinement estimate tracks the true error") {
    const double dt = 1e-2;
    const std::size_t n = steps(10.0, dt);
    SolverConfig cfg{dt};
    cfg.refine = true;
    const auto x = solve_amplitude(kOmega, exponential_kernel(1.0, dt, n), n, cfg);
    REQUIRE(x.error_estimate.has_value());
    const double err = max_error(x, analytic_exponential_amplitude(kOmega, 1.0, 1.0, TimeGrid{dt, n}));
    CHECK(*x.error_estimate > 0.5 * err);
    CHECK(*x.error_estimate < 2.0 * err);
    CHECK_FALSE(solve_amplitude(kOmega, exponential_kernel(1.0, dt, n), n, {dt}).error_estimate);
}

TEST_CASE("driven solver with a single bath mode and no memory") {
    const double dt = 1e-3, wk = 3.0;
    const cplx gk{0.4, 0.1};
    const std::size_t n = steps(5.0, dt);
    const auto psi = solve_driven_amplitude(kOmega, zero_kernel(dt, n),
                                            DriveFunction::bath_mode(gk, wk), 0.0, n, {dt});
    const cplx i{0.0, 1.0};
    double worst = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        const double t = dt * m;
        const cplx exact = -i * gk * (std::exp(-i * wk * t) - std::exp(-i * kOmega * t)) /
                           (i * (kOmega - wk));
        worst = std::max(worst, std::abs(psi[m] - exact));
    }
    CHECK(psi[0] == cplx{});
    CHECK(worst < 1e-6);
}

TEST_CASE("driven solver against an ODE reference") {
    const double dt = 1e-3, g = 1.0;
    const std::size_t n = steps(5.0, dt);
    const auto drive = [](double t) { return cplx{0.3 * std::cos(4.0 * t), -0.2 * std::sin(t)}; };
    DriveFunction f;
    f.fn = drive;
    const cplx x0{0.6, -0.2};
    const auto x = solve_driven_amplitude(kOmega, exponential_kernel(g, dt, n), f, x0, n, {dt});
    const auto expected = ref::exponential_kernel_rk4(kOmega, g, 1.0, kOmega, drive, x0, dt, n);
    double worst = 0.0;
    for (std::size_t m = 0; m < n; ++m) worst = std::max(worst, std::abs(x[m] - expected[m]));
    CHECK(worst < 1e-6);
    CHECK(x[0] == x0);
}

TEST_CASE("homogeneous reduction and superposition") {
    const double dt = 1e-3;
    const std::size_t n = steps(4.0, dt);
    const auto k = exponential_kernel(1.0, dt, n);
    const auto hom = solve_amplitude(kOmega, k, n, {dt});
    const auto same = solve_driven_amplitude(kOmega, k, DriveFunction::zero(), 1.0, n, {dt});
    CHECK(max_error(hom, same) == 0.0);

    const auto f = DriveFunction::bath_mode({0.3, 0.0}, 4.0);
    const cplx a{0.2, 0.7};
    const auto full = solve_driven_amplitude(kOmega, k, f, a, n, {dt});
    const auto part = solve_driven_amplitude(kOmega, k, f, 0.0, n, {dt});
    double worst = 0.0;
    for (std::size_t m = 0; m < n; ++m) worst = std::max(worst, std::abs(full[m] - (a * hom[m] + part[m])));
    CHECK(worst < 1e-13);
}

TEST_CASE("time-unit invariance") {
    const double dt = 1e-3, lambda = 2.5;
    const std::size_t n = steps(5.0, dt);
    const auto k = kernel_zero_t(SpectralDensity::lorentz(1.0, 1.0, kOmega), TimeGrid{dt, n}, {});
    // x(t) solves the problem with (lambda omega, lambda^2 K(lambda t)) at time t / lambda
    KernelSamples scaled = k;
    scaled.dt = dt / lambda;
    for (auto& v : scaled.values) v *= lambda * lambda;
    const auto x = solve_amplitude(kOmega, k, n, {dt});
    const auto y = solve_amplitude(lambda * kOmega, scaled, n, {dt / lambda});
    CHECK(max_error(x, y) < 1e-12);
}

TEST_CASE("contractivity for bath kernels") {
    const double dt = 1e-3;
    const std::size_t n = steps(10.0, dt);
    for (double g : {0.5, 4.0}) {
        const auto k = kernel_zero_t(SpectralDensity::lorentz(g, 1.0, kOmega), TimeGrid{dt, n}, {});
        const auto x = solve_amplitude(kOmega, k, n, {dt});
        double peak = 0.0;
        for (const auto& v : x.values) peak = std::max(peak, std::abs(v));
        CHECK(peak <= 1.0 + 10 * dt * dt);
    }
}

TEST_CASE("grid mismatches are dimension errors") {
    const auto k = zero_kernel(1e-3, 100);
    CHECK_THROWS_AS(solve_amplitude(kOmega, k, 101, {1e-3}), DimensionError);
    CHECK_THROWS_AS(solve_amplitude(kOmega, k, 50, {2e-3}), DimensionError);
    CHECK_THROWS_AS(solve_amplitude(kOmega, k, 0, {1e-3}), DimensionError);
    SolverConfig bad{1e-3};
    bad.corrector_iterations = 0;
    CHECK_THROWS_AS(solve_amplitude(kOmega, k, 10, bad), DomainError);
    CHECK_NOTHROW(solve_amplitude(kOmega, k, 100, {1e-3 * (1 + 1e-14)}));
}
