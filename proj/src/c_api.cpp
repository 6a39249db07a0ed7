// c_api.cpp: extern "C" surface over the rwadyn core. Exceptions never cross
// this boundary; they become status codes plus a thread-local message.

#include "rwadyn/rwadyn.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <new>
#include <string>

#include "rwadyn/bath.hpp"
#include "rwadyn/memory_solver.hpp"
#include "rwadyn/observables.hpp"
#include "rwadyn/oracle.hpp"
#include "rwadyn/scenario.hpp"
#include "rwadyn/version.hpp"

struct rwadyn_kernel {
    rwadyn::KernelSamples impl;
};
struct rwadyn_trajectory {
    rwadyn::Trajectory impl;
};
struct rwadyn_series {
    rwadyn::ObservableSeries impl;
};
struct rwadyn_bath {
    rwadyn::DiscreteBath impl;
};
struct rwadyn_scenario {
    rwadyn::ScenarioConfig impl;
};
struct rwadyn_report {
    rwadyn::RunReport impl;
};

namespace {

thread_local std::string g_last_error;

rwadyn_status fail(rwadyn_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

rwadyn_status map_code(rwadyn::ErrorCode code) {
    using rwadyn::ErrorCode;
    switch (code) {
        case ErrorCode::Domain: return RWADYN_ERR_DOMAIN;
        case ErrorCode::Dimension: return RWADYN_ERR_DIMENSION;
        case ErrorCode::QuadratureFailure: return RWADYN_ERR_QUADRATURE;
        case ErrorCode::InfraredDivergence: return RWADYN_ERR_INFRARED;
        case ErrorCode::KindMismatch: return RWADYN_ERR_KIND_MISMATCH;
        case ErrorCode::Stability: return RWADYN_ERR_STABILITY;
        case ErrorCode::Config: return RWADYN_ERR_CONFIG;
        case ErrorCode::Io: return RWADYN_ERR_IO;
    }
    return RWADYN_ERR_INTERNAL;
}

template <class F>
rwadyn_status guarded(F&& body) {
    try {
        g_last_error.clear();
        body();
        return RWADYN_OK;
    } catch (const rwadyn::Error& e) {
        return fail(map_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(RWADYN_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(RWADYN_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(RWADYN_ERR_INTERNAL, "unknown error");
    }
}

#define RWADYN_REQUIRE(ptr)                                                         \
    do {                                                                            \
        if (!(ptr)) return fail(RWADYN_ERR_INVALID_ARGUMENT, #ptr " must not be NULL"); \
    } while (0)

rwadyn::SpectralDensity to_spec(const rwadyn_lorentz& s) {
    return rwadyn::SpectralDensity::lorentz(s.coupling, s.width, s.center,
                                            {s.omega_min, s.omega_max});
}

rwadyn::TimeGrid to_grid(const rwadyn_grid& g) { return {g.dt, g.count}; }

rwadyn::QuadratureConfig to_quad(const rwadyn_quadrature* q) {
    rwadyn::QuadratureConfig out;
    if (q) {
        out.points_per_period = q->points_per_period;
        out.nodes_per_panel = q->nodes_per_panel;
        out.tolerance = q->tolerance;
        out.tail_tolerance = q->tail_tolerance;
        out.max_panels = q->max_panels;
    }
    return out;
}

rwadyn::SolverConfig to_solver(const rwadyn_solver& s) {
    return {s.dt, s.corrector_iterations, s.refine != 0};
}

rwadyn::OscillatorInitial to_osc(const rwadyn_oscillator_initial& o) {
    return {{o.a_re, o.a_im}, o.number, {o.aa_re, o.aa_im}};
}

void split(const std::vector<rwadyn::cplx>& v, double* re, double* im, std::size_t capacity) {
    const std::size_t n = std::min(capacity, v.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (re) re[i] = v[i].real();
        if (im) im[i] = v[i].imag();
    }
}

}  // namespace

extern "C" {

const char* rwadyn_version(void) { return rwadyn::kVersionString; }

const char* rwadyn_last_error(void) { return g_last_error.c_str(); }

const char* rwadyn_status_name(rwadyn_status status) {
    switch (status) {
        case RWADYN_OK: return "ok";
        case RWADYN_ERR_INVALID_ARGUMENT: return "invalid argument";
        case RWADYN_ERR_DOMAIN: return "domain error";
        case RWADYN_ERR_DIMENSION: return "dimension error";
        case RWADYN_ERR_QUADRATURE: return "quadrature failure";
        case RWADYN_ERR_INFRARED: return "infrared divergence";
        case RWADYN_ERR_KIND_MISMATCH: return "kernel kind mismatch";
        case RWADYN_ERR_STABILITY: return "stability error";
        case RWADYN_ERR_CONFIG: return "configuration error";
        case RWADYN_ERR_IO: return "i/o error";
        case RWADYN_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void rwadyn_lorentz_defaults(rwadyn_lorentz* spec) {
    if (!spec) return;
    const rwadyn::SpectralDensity d;
    *spec = {d.coupling, d.width, d.center, d.window.lo, d.window.hi};
}

void rwadyn_quadrature_defaults(rwadyn_quadrature* quad) {
    if (!quad) return;
    const rwadyn::QuadratureConfig d;
    *quad = {d.points_per_period, d.nodes_per_panel, d.tolerance, d.tail_tolerance, d.max_panels};
}

void rwadyn_solver_defaults(rwadyn_solver* solver) {
    if (!solver) return;
    const rwadyn::SolverConfig d;
    *solver = {d.dt, d.corrector_iterations, d.refine ? 1 : 0};
}

rwadyn_status rwadyn_spectral_density(const rwadyn_lorentz* spec, double omega, double* out) {
    RWADYN_REQUIRE(spec);
    RWADYN_REQUIRE(out);
    return guarded([&] { *out = rwadyn::eval_spectral_density(to_spec(*spec), omega); });
}

rwadyn_status rwadyn_partition_restricted(double slope, double beta, double* out) {
    RWADYN_REQUIRE(out);
    return guarded([&] { *out = rwadyn::partition_restricted({slope}, beta); });
}

rwadyn_status rwadyn_kernel_zero_t(const rwadyn_lorentz* spec, const rwadyn_grid* grid,
                                   const rwadyn_quadrature* quad, rwadyn_kernel** out) {
    RWADYN_REQUIRE(spec);
    RWADYN_REQUIRE(grid);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        *out = new rwadyn_kernel{rwadyn::kernel_zero_t(to_spec(*spec), to_grid(*grid), to_quad(quad))};
    });
}

rwadyn_status rwadyn_kernel_restricted_thermal(const rwadyn_lorentz* spec, double beta,
                                               const rwadyn_grid* grid,
                                               const rwadyn_quadrature* quad, rwadyn_kernel** out) {
    RWADYN_REQUIRE(spec);
    RWADYN_REQUIRE(grid);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        *out = new rwadyn_kernel{rwadyn::kernel_restricted_thermal(to_spec(*spec), beta,
                                                                   to_grid(*grid), to_quad(quad))};
    });
}

rwadyn_status rwadyn_kernel_full_thermal(const rwadyn_lorentz* spec, double beta,
                                         const rwadyn_grid* grid, const rwadyn_quadrature* quad,
                                         rwadyn_kernel** out) {
    RWADYN_REQUIRE(spec);
    RWADYN_REQUIRE(grid);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        *out = new rwadyn_kernel{
            rwadyn::kernel_full_thermal(to_spec(*spec), beta, to_grid(*grid), to_quad(quad))};
    });
}

rwadyn_status rwadyn_kernel_full_line(const rwadyn_lorentz* spec, const rwadyn_grid* grid,
                                      rwadyn_kernel** out) {
    RWADYN_REQUIRE(spec);
    RWADYN_REQUIRE(grid);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        *out = new rwadyn_kernel{rwadyn::full_line_lorentz_samples(to_spec(*spec), to_grid(*grid))};
    });
}

rwadyn_status rwadyn_kernel_from_samples(rwadyn_kernel_kind kind, double beta, double dt,
                                         const double* re, const double* im, size_t count,
                                         rwadyn_kernel** out) {
    RWADYN_REQUIRE(re);
    RWADYN_REQUIRE(im);
    RWADYN_REQUIRE(out);
    if (kind < RWADYN_KERNEL_ZERO_T || kind > RWADYN_KERNEL_FULL_THERMAL)
        return fail(RWADYN_ERR_INVALID_ARGUMENT, "unknown kernel kind");
    return guarded([&] {
        rwadyn::validate(rwadyn::TimeGrid{dt, count});
        rwadyn::KernelSamples k;
        k.kind = static_cast<rwadyn::KernelKind>(kind);
        k.beta = beta;
        k.dt = dt;
        k.values.resize(count);
        for (size_t i = 0; i < count; ++i) k.values[i] = {re[i], im[i]};
        *out = new rwadyn_kernel{std::move(k)};
    });
}

size_t rwadyn_kernel_size(const rwadyn_kernel* kernel) { return kernel ? kernel->impl.size() : 0; }

double rwadyn_kernel_dt(const rwadyn_kernel* kernel) { return kernel ? kernel->impl.dt : 0.0; }

rwadyn_kernel_kind rwadyn_kernel_get_kind(const rwadyn_kernel* kernel) {
    return kernel ? static_cast<rwadyn_kernel_kind>(kernel->impl.kind) : RWADYN_KERNEL_ZERO_T;
}

double rwadyn_kernel_error_estimate(const rwadyn_kernel* kernel) {
    return kernel ? kernel->impl.error_estimate : 0.0;
}

rwadyn_status rwadyn_kernel_values(const rwadyn_kernel* kernel, double* re, double* im,
                                   size_t capacity) {
    RWADYN_REQUIRE(kernel);
    split(kernel->impl.values, re, im, capacity);
    return RWADYN_OK;
}

void rwadyn_kernel_free(rwadyn_kernel* kernel) { delete kernel; }

rwadyn_status rwadyn_solve_amplitude(double omega, const rwadyn_kernel* kernel, size_t count,
                                     const rwadyn_solver* solver, rwadyn_trajectory** out) {
    RWADYN_REQUIRE(kernel);
    RWADYN_REQUIRE(solver);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        *out = new rwadyn_trajectory{
            rwadyn::solve_amplitude(omega, kernel->impl, count, to_solver(*solver))};
    });
}

rwadyn_status rwadyn_solve_driven_amplitude(double omega, const rwadyn_kernel* kernel,
                                            rwadyn_drive_fn drive, void* user, double initial_re,
                                            double initial_im, size_t count,
                                            const rwadyn_solver* solver, rwadyn_trajectory** out) {
    RWADYN_REQUIRE(kernel);
    RWADYN_REQUIRE(solver);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        rwadyn::DriveFunction f;
        if (drive) {
            f.fn = [drive, user](double t) {
                double re = 0.0, im = 0.0;
                drive(t, user, &re, &im);
                return rwadyn::cplx{re, im};
            };
        }
        *out = new rwadyn_trajectory{rwadyn::solve_driven_amplitude(
            omega, kernel->impl, f, {initial_re, initial_im}, count, to_solver(*solver))};
    });
}

rwadyn_status rwadyn_solve_mode_driven_amplitude(double omega, const rwadyn_kernel* kernel,
                                                 double coupling_re, double coupling_im,
                                                 double mode_frequency, double initial_re,
                                                 double initial_im, size_t count,
                                                 const rwadyn_solver* solver,
                                                 rwadyn_trajectory** out) {
    RWADYN_REQUIRE(kernel);
    RWADYN_REQUIRE(solver);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        const auto f = rwadyn::DriveFunction::bath_mode({coupling_re, coupling_im}, mode_frequency);
        *out = new rwadyn_trajectory{rwadyn::solve_driven_amplitude(
            omega, kernel->impl, f, {initial_re, initial_im}, count, to_solver(*solver))};
    });
}

rwadyn_status rwadyn_analytic_exponential_amplitude(double omega, double coupling, double width,
                                                    const rwadyn_grid* grid,
                                                    rwadyn_trajectory** out) {
    RWADYN_REQUIRE(grid);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        *out = new rwadyn_trajectory{
            rwadyn::analytic_exponential_amplitude(omega, coupling, width, to_grid(*grid))};
    });
}

size_t rwadyn_trajectory_size(const rwadyn_trajectory* traj) { return traj ? traj->impl.size() : 0; }

rwadyn_status rwadyn_trajectory_values(const rwadyn_trajectory* traj, double* re, double* im,
                                       size_t capacity) {
    RWADYN_REQUIRE(traj);
    split(traj->impl.values, re, im, capacity);
    return RWADYN_OK;
}

int rwadyn_trajectory_error_estimate(const rwadyn_trajectory* traj, double* out) {
    if (!traj || !traj->impl.error_estimate) return 0;
    if (out) *out = *traj->impl.error_estimate;
    return 1;
}

void rwadyn_trajectory_free(rwadyn_trajectory* traj) { delete traj; }

rwadyn_status rwadyn_thermal_injection(const rwadyn_trajectory* x, const rwadyn_kernel* kernel,
                                       double* out, size_t capacity) {
    RWADYN_REQUIRE(x);
    RWADYN_REQUIRE(kernel);
    RWADYN_REQUIRE(out);
    if (capacity < x->impl.size())
        return fail(RWADYN_ERR_INVALID_ARGUMENT, "output buffer smaller than the trajectory");
    return guarded([&] {
        const auto f = rwadyn::thermal_injection(x->impl, kernel->impl);
        std::copy(f.begin(), f.end(), out);
    });
}

rwadyn_status rwadyn_excited_population(const rwadyn_trajectory* x,
                                        const rwadyn_kernel* restricted_kernel, double p, double z,
                                        double beta, rwadyn_series** out) {
    RWADYN_REQUIRE(x);
    RWADYN_REQUIRE(restricted_kernel);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        *out = new rwadyn_series{
            rwadyn::excited_population(x->impl, restricted_kernel->impl, {p, z, beta})};
    });
}

rwadyn_status rwadyn_oscillator_moments(const rwadyn_trajectory* x,
                                        const rwadyn_kernel* full_kernel,
                                        const rwadyn_oscillator_initial* init,
                                        rwadyn_series** out) {
    RWADYN_REQUIRE(x);
    RWADYN_REQUIRE(full_kernel);
    RWADYN_REQUIRE(init);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        *out = new rwadyn_series{
            rwadyn::oscillator_moments(x->impl, full_kernel->impl, to_osc(*init))};
    });
}

rwadyn_status rwadyn_one_photon_amplitude(const rwadyn_trajectory* x, double coupling_re,
                                          double coupling_im, double mode_frequency,
                                          rwadyn_trajectory** out) {
    RWADYN_REQUIRE(x);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        *out = new rwadyn_trajectory{
            rwadyn::one_photon_amplitude(x->impl, {coupling_re, coupling_im}, mode_frequency)};
    });
}

size_t rwadyn_series_size(const rwadyn_series* series) { return series ? series->impl.size() : 0; }

rwadyn_status rwadyn_series_population(const rwadyn_series* series, double* out, size_t capacity) {
    RWADYN_REQUIRE(series);
    RWADYN_REQUIRE(out);
    const auto& p = series->impl.population;
    std::copy_n(p.begin(), std::min(capacity, p.size()), out);
    return RWADYN_OK;
}

rwadyn_status rwadyn_series_mean_a(const rwadyn_series* series, double* re, double* im,
                                   size_t capacity) {
    RWADYN_REQUIRE(series);
    if (!series->impl.mean_a) return fail(RWADYN_ERR_INVALID_ARGUMENT, "series has no <a(t)>");
    split(*series->impl.mean_a, re, im, capacity);
    return RWADYN_OK;
}

rwadyn_status rwadyn_series_mean_aa(const rwadyn_series* series, double* re, double* im,
                                    size_t capacity) {
    RWADYN_REQUIRE(series);
    if (!series->impl.mean_aa) return fail(RWADYN_ERR_INVALID_ARGUMENT, "series has no <a(t)^2>");
    split(*series->impl.mean_aa, re, im, capacity);
    return RWADYN_OK;
}

void rwadyn_series_free(rwadyn_series* series) { delete series; }

rwadyn_status rwadyn_discretize_bath(const rwadyn_lorentz* spec, size_t modes, double window_lo,
                                     double window_hi, rwadyn_bath** out) {
    RWADYN_REQUIRE(spec);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        *out = new rwadyn_bath{rwadyn::discretize_bath(to_spec(*spec), modes, {window_lo, window_hi})};
    });
}

size_t rwadyn_bath_size(const rwadyn_bath* bath) { return bath ? bath->impl.size() : 0; }

rwadyn_status rwadyn_bath_modes(const rwadyn_bath* bath, double* frequencies, double* couplings,
                                size_t capacity) {
    RWADYN_REQUIRE(bath);
    const std::size_t n = std::min(capacity, bath->impl.size());
    for (std::size_t j = 0; j < n; ++j) {
        if (frequencies) frequencies[j] = bath->impl.frequencies[j];
        if (couplings) couplings[j] = bath->impl.couplings[j];
    }
    return RWADYN_OK;
}

void rwadyn_bath_free(rwadyn_bath* bath) { delete bath; }

rwadyn_status rwadyn_oracle_population(const rwadyn_bath* bath, double omega, double beta,
                                       double p, double z, const rwadyn_grid* grid,
                                       double* max_norm_drift, rwadyn_series** out) {
    RWADYN_REQUIRE(bath);
    RWADYN_REQUIRE(grid);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        rwadyn::PropagationStats stats;
        auto series = rwadyn::oracle_population(bath->impl, omega, {p, z, beta}, to_grid(*grid), {},
                                                &stats);
        if (max_norm_drift) *max_norm_drift = stats.max_norm_drift;
        *out = new rwadyn_series{std::move(series)};
    });
}

rwadyn_status rwadyn_oracle_oscillator_moments(const rwadyn_bath* bath, double omega, double beta,
                                               const rwadyn_oscillator_initial* init,
                                               const rwadyn_grid* grid, double* max_norm_drift,
                                               rwadyn_series** out) {
    RWADYN_REQUIRE(bath);
    RWADYN_REQUIRE(init);
    RWADYN_REQUIRE(grid);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        rwadyn::PropagationStats stats;
        auto series = rwadyn::oracle_oscillator_moments(bath->impl, omega, beta, to_osc(*init),
                                                        to_grid(*grid), {}, &stats);
        if (max_norm_drift) *max_norm_drift = stats.max_norm_drift;
        *out = new rwadyn_series{std::move(series)};
    });
}

rwadyn_status rwadyn_scenario_load(const char* path, rwadyn_scenario** out) {
    RWADYN_REQUIRE(path);
    RWADYN_REQUIRE(out);
    return guarded([&] { *out = new rwadyn_scenario{rwadyn::load_config(path)}; });
}

rwadyn_status rwadyn_scenario_parse(const char* text, rwadyn_scenario** out) {
    RWADYN_REQUIRE(text);
    RWADYN_REQUIRE(out);
    return guarded([&] { *out = new rwadyn_scenario{rwadyn::parse_config(text)}; });
}

rwadyn_status rwadyn_scenario_figure1(double g_over_gamma, rwadyn_scenario** out) {
    RWADYN_REQUIRE(out);
    return guarded([&] { *out = new rwadyn_scenario{rwadyn::figure1_preset(g_over_gamma)}; });
}

rwadyn_status rwadyn_scenario_set_output(rwadyn_scenario* scenario, const char* path) {
    RWADYN_REQUIRE(scenario);
    RWADYN_REQUIRE(path);
    if (!*path) return fail(RWADYN_ERR_CONFIG, "output path is empty");
    return guarded([&] { scenario->impl.output = path; });
}

size_t rwadyn_scenario_format(const rwadyn_scenario* scenario, char* buf, size_t capacity) {
    if (!scenario) return 0;
    const std::string text = rwadyn::format_config(scenario->impl);
    if (buf && capacity) {
        const std::size_t n = std::min(capacity - 1, text.size());
        std::copy_n(text.data(), n, buf);
        buf[n] = '\0';
    }
    return text.size();
}

rwadyn_status rwadyn_scenario_run(const rwadyn_scenario* scenario, int compare,
                                  rwadyn_report** out) {
    RWADYN_REQUIRE(scenario);
    RWADYN_REQUIRE(out);
    return guarded([&] {
        *out = new rwadyn_report{rwadyn::run_scenario(scenario->impl, compare != 0)};
    });
}

void rwadyn_scenario_free(rwadyn_scenario* scenario) { delete scenario; }

const char* rwadyn_report_csv_path(const rwadyn_report* report) {
    return report ? report->impl.csv_path.c_str() : "";
}

const char* rwadyn_report_manifest_path(const rwadyn_report* report) {
    return report ? report->impl.manifest_path.c_str() : "";
}

int rwadyn_report_max_abs_diff(const rwadyn_report* report, double* out) {
    if (!report || !report->impl.max_abs_diff) return 0;
    if (out) *out = *report->impl.max_abs_diff;
    return 1;
}

void rwadyn_report_free(rwadyn_report* report) { delete report; }

}  // extern "C"
