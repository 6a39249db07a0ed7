/*
 * rwadyn.h: C interface to the rwadyn shared library.
 *
 * Objects are opaque handles owned by the caller and released with the matching
 * *_free function (passing NULL is allowed). Every fallible call returns an
 * rwadyn_status; on failure a description is available from rwadyn_last_error()
 * until the next call on the same thread. Complex arrays are exchanged as
 * separate real/imaginary double arrays.
 */
#ifndef RWADYN_H
#define RWADYN_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(RWADYN_BUILDING_LIBRARY)
#    define RWADYN_API __declspec(dllexport)
#  else
#    define RWADYN_API __declspec(dllimport)
#  endif
#else
#  define RWADYN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rwadyn_status {
    RWADYN_OK = 0,
    RWADYN_ERR_INVALID_ARGUMENT = 1, /* null pointer, index out of range */
    RWADYN_ERR_DOMAIN = 2,
    RWADYN_ERR_DIMENSION = 3,
    RWADYN_ERR_QUADRATURE = 4,
    RWADYN_ERR_INFRARED = 5,
    RWADYN_ERR_KIND_MISMATCH = 6,
    RWADYN_ERR_STABILITY = 7,
    RWADYN_ERR_CONFIG = 8,
    RWADYN_ERR_IO = 9,
    RWADYN_ERR_INTERNAL = 10
} rwadyn_status;

typedef enum rwadyn_kernel_kind {
    RWADYN_KERNEL_ZERO_T = 0,
    RWADYN_KERNEL_RESTRICTED_THERMAL = 1,
    RWADYN_KERNEL_FULL_THERMAL = 2
} rwadyn_kernel_kind;

typedef struct rwadyn_kernel rwadyn_kernel;
typedef struct rwadyn_trajectory rwadyn_trajectory;
typedef struct rwadyn_series rwadyn_series;
typedef struct rwadyn_bath rwadyn_bath;
typedef struct rwadyn_scenario rwadyn_scenario;
typedef struct rwadyn_report rwadyn_report;

/* Plain parameter blocks. Use the *_defaults functions to initialise them. */
typedef struct rwadyn_lorentz {
    double coupling; /* g */
    double width;    /* gamma */
    double center;   /* Omega_c */
    double omega_min;
    double omega_max; /* +INFINITY: chosen from the tail tolerance */
} rwadyn_lorentz;

typedef struct rwadyn_grid {
    double dt;
    size_t count;
} rwadyn_grid;

typedef struct rwadyn_quadrature {
    int points_per_period;
    int nodes_per_panel;
    double tolerance;
    double tail_tolerance;
    size_t max_panels;
} rwadyn_quadrature;

typedef struct rwadyn_solver {
    double dt;
    int corrector_iterations;
    int refine; /* nonzero: also solve at 2*dt and report a Richardson estimate */
} rwadyn_solver;

typedef struct rwadyn_oscillator_initial {
    double a_re, a_im;   /* <a(0)> */
    double number;       /* <a^dagger a(0)> */
    double aa_re, aa_im; /* <a(0)^2> */
} rwadyn_oscillator_initial;

/* Drive f(t) for the driven solver; write f(t) into *re, *im. */
typedef void (*rwadyn_drive_fn)(double t, void* user, double* re, double* im);

RWADYN_API const char* rwadyn_version(void);
RWADYN_API const char* rwadyn_last_error(void);
RWADYN_API const char* rwadyn_status_name(rwadyn_status status);

RWADYN_API void rwadyn_lorentz_defaults(rwadyn_lorentz* spec);
RWADYN_API void rwadyn_quadrature_defaults(rwadyn_quadrature* quad);
RWADYN_API void rwadyn_solver_defaults(rwadyn_solver* solver);

/* ---- bath ---------------------------------------------------------------- */

RWADYN_API rwadyn_status rwadyn_spectral_density(const rwadyn_lorentz* spec, double omega,
                                                 double* out);
RWADYN_API rwadyn_status rwadyn_partition_restricted(double slope, double beta, double* out);

RWADYN_API rwadyn_status rwadyn_kernel_zero_t(const rwadyn_lorentz* spec, const rwadyn_grid* grid,
                                              const rwadyn_quadrature* quad, rwadyn_kernel** out);
RWADYN_API rwadyn_status rwadyn_kernel_restricted_thermal(const rwadyn_lorentz* spec, double beta,
                                                          const rwadyn_grid* grid,
                                                          const rwadyn_quadrature* quad,
                                                          rwadyn_kernel** out);
RWADYN_API rwadyn_status rwadyn_kernel_full_thermal(const rwadyn_lorentz* spec, double beta,
                                                    const rwadyn_grid* grid,
                                                    const rwadyn_quadrature* quad,
                                                    rwadyn_kernel** out);
/* Closed-form full-line Lorentz kernel g^2 e^{-gamma t/2} e^{-i Omega_c t}. */
RWADYN_API rwadyn_status rwadyn_kernel_full_line(const rwadyn_lorentz* spec,
                                                 const rwadyn_grid* grid, rwadyn_kernel** out);
/* Wraps caller-supplied samples (copied). */
RWADYN_API rwadyn_status rwadyn_kernel_from_samples(rwadyn_kernel_kind kind, double beta, double dt,
                                                    const double* re, const double* im,
                                                    size_t count, rwadyn_kernel** out);

RWADYN_API size_t rwadyn_kernel_size(const rwadyn_kernel* kernel);
RWADYN_API double rwadyn_kernel_dt(const rwadyn_kernel* kernel);
RWADYN_API rwadyn_kernel_kind rwadyn_kernel_get_kind(const rwadyn_kernel* kernel);
RWADYN_API double rwadyn_kernel_error_estimate(const rwadyn_kernel* kernel);
/* Copies min(capacity, size) samples. */
RWADYN_API rwadyn_status rwadyn_kernel_values(const rwadyn_kernel* kernel, double* re, double* im,
                                              size_t capacity);
RWADYN_API void rwadyn_kernel_free(rwadyn_kernel* kernel);

/* ---- memory solver ------------------------------------------------------- */

RWADYN_API rwadyn_status rwadyn_solve_amplitude(double omega, const rwadyn_kernel* kernel,
                                                size_t count, const rwadyn_solver* solver,
                                                rwadyn_trajectory** out);
/* drive may be NULL (f = 0). */
RWADYN_API rwadyn_status rwadyn_solve_driven_amplitude(double omega, const rwadyn_kernel* kernel,
                                                       rwadyn_drive_fn drive, void* user,
                                                       double initial_re, double initial_im,
                                                       size_t count, const rwadyn_solver* solver,
                                                       rwadyn_trajectory** out);
/* Drive g_k e^{-i w_k t}. */
RWADYN_API rwadyn_status rwadyn_solve_mode_driven_amplitude(
    double omega, const rwadyn_kernel* kernel, double coupling_re, double coupling_im,
    double mode_frequency, double initial_re, double initial_im, size_t count,
    const rwadyn_solver* solver, rwadyn_trajectory** out);
RWADYN_API rwadyn_status rwadyn_analytic_exponential_amplitude(double omega, double coupling,
                                                               double width,
                                                               const rwadyn_grid* grid,
                                                               rwadyn_trajectory** out);

RWADYN_API size_t rwadyn_trajectory_size(const rwadyn_trajectory* traj);
RWADYN_API rwadyn_status rwadyn_trajectory_values(const rwadyn_trajectory* traj, double* re,
                                                  double* im, size_t capacity);
/* Returns 0 when no estimate was computed. */
RWADYN_API int rwadyn_trajectory_error_estimate(const rwadyn_trajectory* traj, double* out);
RWADYN_API void rwadyn_trajectory_free(rwadyn_trajectory* traj);

/* ---- observables --------------------------------------------------------- */

/* out must hold rwadyn_trajectory_size(x) doubles. */
RWADYN_API rwadyn_status rwadyn_thermal_injection(const rwadyn_trajectory* x,
                                                  const rwadyn_kernel* kernel, double* out,
                                                  size_t capacity);
RWADYN_API rwadyn_status rwadyn_excited_population(const rwadyn_trajectory* x,
                                                   const rwadyn_kernel* restricted_kernel,
                                                   double p, double z, double beta,
                                                   rwadyn_series** out);
RWADYN_API rwadyn_status rwadyn_oscillator_moments(const rwadyn_trajectory* x,
                                                   const rwadyn_kernel* full_kernel,
                                                   const rwadyn_oscillator_initial* init,
                                                   rwadyn_series** out);
RWADYN_API rwadyn_status rwadyn_one_photon_amplitude(const rwadyn_trajectory* x,
                                                     double coupling_re, double coupling_im,
                                                     double mode_frequency,
                                                     rwadyn_trajectory** out);

RWADYN_API size_t rwadyn_series_size(const rwadyn_series* series);
RWADYN_API rwadyn_status rwadyn_series_population(const rwadyn_series* series, double* out,
                                                  size_t capacity);
/* RWADYN_ERR_INVALID_ARGUMENT when the series carries no such moment. */
RWADYN_API rwadyn_status rwadyn_series_mean_a(const rwadyn_series* series, double* re, double* im,
                                              size_t capacity);
RWADYN_API rwadyn_status rwadyn_series_mean_aa(const rwadyn_series* series, double* re,
                                               double* im, size_t capacity);
RWADYN_API void rwadyn_series_free(rwadyn_series* series);

/* ---- oracle -------------------------------------------------------------- */

RWADYN_API rwadyn_status rwadyn_discretize_bath(const rwadyn_lorentz* spec, size_t modes,
                                                double window_lo, double window_hi,
                                                rwadyn_bath** out);
RWADYN_API size_t rwadyn_bath_size(const rwadyn_bath* bath);
RWADYN_API rwadyn_status rwadyn_bath_modes(const rwadyn_bath* bath, double* frequencies,
                                           double* couplings, size_t capacity);
RWADYN_API void rwadyn_bath_free(rwadyn_bath* bath);

/* max_norm_drift may be NULL. */
RWADYN_API rwadyn_status rwadyn_oracle_population(const rwadyn_bath* bath, double omega,
                                                  double beta, double p, double z,
                                                  const rwadyn_grid* grid,
                                                  double* max_norm_drift, rwadyn_series** out);
RWADYN_API rwadyn_status rwadyn_oracle_oscillator_moments(const rwadyn_bath* bath, double omega,
                                                          double beta,
                                                          const rwadyn_oscillator_initial* init,
                                                          const rwadyn_grid* grid,
                                                          double* max_norm_drift,
                                                          rwadyn_series** out);

/* ---- scenarios ----------------------------------------------------------- */

RWADYN_API rwadyn_status rwadyn_scenario_load(const char* path, rwadyn_scenario** out);
RWADYN_API rwadyn_status rwadyn_scenario_parse(const char* text, rwadyn_scenario** out);
RWADYN_API rwadyn_status rwadyn_scenario_figure1(double g_over_gamma, rwadyn_scenario** out);
RWADYN_API rwadyn_status rwadyn_scenario_set_output(rwadyn_scenario* scenario, const char* path);
/* Canonical config text; returns the length needed (excluding NUL) and writes up to
 * capacity-1 characters plus NUL when buf is non-NULL. */
RWADYN_API size_t rwadyn_scenario_format(const rwadyn_scenario* scenario, char* buf,
                                         size_t capacity);
/* compare != 0 runs the finite-mode oracle alongside the Volterra pipeline. */
RWADYN_API rwadyn_status rwadyn_scenario_run(const rwadyn_scenario* scenario, int compare,
                                             rwadyn_report** out);
RWADYN_API void rwadyn_scenario_free(rwadyn_scenario* scenario);

RWADYN_API const char* rwadyn_report_csv_path(const rwadyn_report* report);
RWADYN_API const char* rwadyn_report_manifest_path(const rwadyn_report* report);
/* Returns 0 when the run had no oracle comparison. */
RWADYN_API int rwadyn_report_max_abs_diff(const rwadyn_report* report, double* out);
RWADYN_API void rwadyn_report_free(rwadyn_report* report);

#ifdef __cplusplus
}
#endif

#endif /* RWADYN_H */
