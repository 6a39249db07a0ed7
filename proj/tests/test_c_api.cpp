#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "rwadyn/rwadyn.h"

namespace {

rwadyn_lorentz lorentz(double g) {
    rwadyn_lorentz spec;
    rwadyn_lorentz_defaults(&spec);
    spec.coupling = g;
    return spec;
}

rwadyn_solver solver(double dt) {
    rwadyn_solver s;
    rwadyn_solver_defaults(&s);
    s.dt = dt;
    return s;
}

void constant_drive(double, void* user, double* re, double* im) {
    const double* value = static_cast<const double*>(user);
    *re = value[0];
    *im = value[1];
}

}  // namespace

TEST_CASE("defaults and metadata") {
    CHECK(std::string(rwadyn_version()) == "0.3.0");
    rwadyn_lorentz spec;
    rwadyn_lorentz_defaults(&spec);
    CHECK(spec.width == 1.0);
    CHECK(std::isinf(spec.omega_max));
    rwadyn_quadrature quad;
    rwadyn_quadrature_defaults(&quad);
    CHECK(quad.tolerance == 1e-8);
    CHECK(quad.nodes_per_panel == 8);
    rwadyn_solver s;
    rwadyn_solver_defaults(&s);
    CHECK(s.corrector_iterations == 2);
    CHECK(s.refine == 0);
    CHECK(std::string(rwadyn_status_name(RWADYN_ERR_INFRARED)) == "infrared divergence");
}

TEST_CASE("spectral density and partition") {
    const auto spec = lorentz(2.0);
    double j = 0.0;
    REQUIRE(rwadyn_spectral_density(&spec, 5.0, &j) == RWADYN_OK);
    CHECK(j == doctest::Approx(16.0));
    CHECK(rwadyn_spectral_density(&spec, -1.0, &j) == RWADYN_ERR_DOMAIN);
    CHECK(std::string(rwadyn_last_error()).find("negative") != std::string::npos);
    double z = 0.0;
    REQUIRE(rwadyn_partition_restricted(100.0, 0.5, &z) == RWADYN_OK);
    CHECK(z == doctest::Approx(std::exp(M_PI * M_PI / 150.0)));
    CHECK(rwadyn_partition_restricted(100.0, 0.5, nullptr) == RWADYN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("error codes cross the boundary") {
    const auto spec = lorentz(1.0);
    const rwadyn_grid grid{1e-2, 101};
    rwadyn_kernel* k = nullptr;
    CHECK(rwadyn_kernel_full_thermal(&spec, 0.5, &grid, nullptr, &k) == RWADYN_ERR_INFRARED);
    CHECK(k == nullptr);
    CHECK(std::string(rwadyn_last_error()).size() > 0);

    rwadyn_quadrature quad;
    rwadyn_quadrature_defaults(&quad);
    quad.tolerance = 1e-15;
    quad.nodes_per_panel = 1;
    quad.max_panels = 4096;
    CHECK(rwadyn_kernel_zero_t(&spec, &grid, &quad, &k) == RWADYN_ERR_QUADRATURE);

    REQUIRE(rwadyn_kernel_zero_t(&spec, &grid, nullptr, &k) == RWADYN_OK);
    rwadyn_trajectory* x = nullptr;
    const auto wrong = solver(2e-2);
    CHECK(rwadyn_solve_amplitude(5.0, k, 50, &wrong, &x) == RWADYN_ERR_DIMENSION);
    const auto right = solver(1e-2);
    REQUIRE(rwadyn_solve_amplitude(5.0, k, 101, &right, &x) == RWADYN_OK);
    rwadyn_series* s = nullptr;
    CHECK(rwadyn_excited_population(x, k, 0.3, 1.0, 0.5, &s) == RWADYN_ERR_KIND_MISMATCH);
    CHECK(rwadyn_scenario_parse("g = 1\nnope = 2\n", nullptr) == RWADYN_ERR_INVALID_ARGUMENT);
    rwadyn_scenario* sc = nullptr;
    CHECK(rwadyn_scenario_parse("g = 1\nnope = 2\n", &sc) == RWADYN_ERR_CONFIG);
    CHECK(std::string(rwadyn_last_error()).rfind("line 2:", 0) == 0);
    rwadyn_trajectory_free(x);
    rwadyn_kernel_free(k);
    rwadyn_kernel_free(nullptr);
}

TEST_CASE("analytic regression through the C API") {
    auto spec = lorentz(1.0);
    const rwadyn_grid grid{1e-3, 5001};
    rwadyn_kernel* k = nullptr;
    REQUIRE(rwadyn_kernel_full_line(&spec, &grid, &k) == RWADYN_OK);
    CHECK(rwadyn_kernel_size(k) == 5001);
    CHECK(rwadyn_kernel_dt(k) == 1e-3);
    CHECK(rwadyn_kernel_get_kind(k) == RWADYN_KERNEL_ZERO_T);
    const auto s = solver(1e-3);
    rwadyn_trajectory* x = nullptr;
    rwadyn_trajectory* exact = nullptr;
    REQUIRE(rwadyn_solve_amplitude(5.0, k, 5001, &s, &x) == RWADYN_OK);
    REQUIRE(rwadyn_analytic_exponential_amplitude(5.0, 1.0, 1.0, &grid, &exact) == RWADYN_OK);
    std::vector<double> xr(5001), xi(5001), er(5001), ei(5001);
    REQUIRE(rwadyn_trajectory_values(x, xr.data(), xi.data(), xr.size()) == RWADYN_OK);
    REQUIRE(rwadyn_trajectory_values(exact, er.data(), ei.data(), er.size()) == RWADYN_OK);
    double worst = 0.0;
    for (std::size_t n = 0; n < xr.size(); ++n) worst = std::max(worst, std::hypot(xr[n] - er[n], xi[n] - ei[n]));
    CHECK(worst < 1e-6);
    double est = 0.0;
    CHECK(rwadyn_trajectory_error_estimate(x, &est) == 0);
    rwadyn_trajectory_free(x);
    rwadyn_trajectory_free(exact);
    rwadyn_kernel_free(k);
}

TEST_CASE("driven solvers and one-photon amplitude agree") {
    const auto spec = lorentz(1.0);
    const rwadyn_grid grid{1e-3, 3001};
    rwadyn_kernel* k = nullptr;
    REQUIRE(rwadyn_kernel_zero_t(&spec, &grid, nullptr, &k) == RWADYN_OK);
    const auto s = solver(1e-3);
    rwadyn_trajectory *x = nullptr, *mode = nullptr, *photon = nullptr, *callback = nullptr;
    REQUIRE(rwadyn_solve_amplitude(5.0, k, 3001, &s, &x) == RWADYN_OK);
    REQUIRE(rwadyn_solve_mode_driven_amplitude(5.0, k, 0.3, 0.0, 4.0, 0.0, 0.0, 3001, &s, &mode) == RWADYN_OK);
    REQUIRE(rwadyn_one_photon_amplitude(x, 0.3, 0.0, 4.0, &photon) == RWADYN_OK);
    std::vector<double> mr(3001), mi(3001), pr(3001), pi(3001);
    rwadyn_trajectory_values(mode, mr.data(), mi.data(), 3001);
    rwadyn_trajectory_values(photon, pr.data(), pi.data(), 3001);
    double worst = 0.0;
    for (std::size_t n = 0; n < mr.size(); ++n) worst = std::max(worst, std::hypot(mr[n] - pr[n], mi[n] - pi[n]));
    CHECK(worst < 1e-5);

    // a zero-valued callback drive with initial 1 reproduces the homogeneous solution
    double value[2] = {0.0, 0.0};
    REQUIRE(rwadyn_solve_driven_amplitude(5.0, k, constant_drive, value, 1.0, 0.0, 3001, &s, &callback) == RWADYN_OK);
    std::vector<double> xr(3001), xi(3001), cr(3001), ci(3001);
    rwadyn_trajectory_values(x, xr.data(), xi.data(), 3001);
    rwadyn_trajectory_values(callback, cr.data(), ci.data(), 3001);
    CHECK(xr == cr);
    CHECK(xi == ci);
    for (auto* t : {x, mode, photon, callback}) rwadyn_trajectory_free(t);
    rwadyn_kernel_free(k);
}

TEST_CASE("observables and oracle through the C API") {
    auto spec = lorentz(0.5);
    spec.omega_min = 0.5;
    const rwadyn_grid grid{1e-2, 501};
    rwadyn_kernel *g0 = nullptr, *g1 = nullptr, *ginf = nullptr;
    REQUIRE(rwadyn_kernel_zero_t(&spec, &grid, nullptr, &g0) == RWADYN_OK);
    REQUIRE(rwadyn_kernel_restricted_thermal(&spec, 0.5, &grid, nullptr, &g1) == RWADYN_OK);
    REQUIRE(rwadyn_kernel_full_thermal(&spec, 0.5, &grid, nullptr, &ginf) == RWADYN_OK);
    CHECK(rwadyn_kernel_get_kind(ginf) == RWADYN_KERNEL_FULL_THERMAL);
    CHECK(rwadyn_kernel_error_estimate(g1) >= 0.0);
    const auto s = solver(1e-2);
    rwadyn_trajectory* x = nullptr;
    REQUIRE(rwadyn_solve_amplitude(5.0, g0, 501, &s, &x) == RWADYN_OK);

    std::vector<double> f(501);
    CHECK(rwadyn_thermal_injection(x, ginf, f.data(), 10) == RWADYN_ERR_INVALID_ARGUMENT);
    REQUIRE(rwadyn_thermal_injection(x, ginf, f.data(), f.size()) == RWADYN_OK);

    rwadyn_series *rho = nullptr, *osc = nullptr;
    REQUIRE(rwadyn_excited_population(x, g1, 0.3, 1.2, 0.5, &rho) == RWADYN_OK);
    std::vector<double> pop(501);
    REQUIRE(rwadyn_series_population(rho, pop.data(), pop.size()) == RWADYN_OK);
    CHECK(pop[0] == 0.3 / 1.2);
    double re[1], im[1];
    CHECK(rwadyn_series_mean_a(rho, re, im, 1) == RWADYN_ERR_INVALID_ARGUMENT);

    const rwadyn_oscillator_initial vacuum{0, 0, 0, 0, 0};
    REQUIRE(rwadyn_oscillator_moments(x, ginf, &vacuum, &osc) == RWADYN_OK);
    std::vector<double> ada(501);
    rwadyn_series_population(osc, ada.data(), ada.size());
    CHECK(ada == f);
    REQUIRE(rwadyn_series_mean_aa(osc, re, im, 1) == RWADYN_OK);
    CHECK(re[0] == 0.0);

    rwadyn_bath* bath = nullptr;
    CHECK(rwadyn_discretize_bath(&spec, 100, 0.0, 40.0, &bath) == RWADYN_ERR_DOMAIN);
    REQUIRE(rwadyn_discretize_bath(&spec, 400, 0.5, 40.5, &bath) == RWADYN_OK);
    CHECK(rwadyn_bath_size(bath) == 400);
    std::vector<double> w(400), g(400);
    REQUIRE(rwadyn_bath_modes(bath, w.data(), g.data(), 400) == RWADYN_OK);
    CHECK(w[0] == doctest::Approx(0.55));
    double drift = -1.0;
    rwadyn_series* orho = nullptr;
    REQUIRE(rwadyn_oracle_population(bath, 5.0, 0.5, 0.3, 1.2, &grid, &drift, &orho) == RWADYN_OK);
    CHECK(drift >= 0.0);
    CHECK(drift < 1e-8);
    CHECK(rwadyn_series_size(orho) == 501);
    rwadyn_series* oosc = nullptr;
    REQUIRE(rwadyn_oracle_oscillator_moments(bath, 5.0, 0.5, &vacuum, &grid, nullptr, &oosc) == RWADYN_OK);

    for (auto* p : {rho, osc, orho, oosc}) rwadyn_series_free(p);
    rwadyn_bath_free(bath);
    rwadyn_trajectory_free(x);
    for (auto* k : {g0, g1, ginf}) rwadyn_kernel_free(k);
}

TEST_CASE("kernel from caller samples") {
    const double re[3] = {1.0, 0.5, 0.25};
    const double im[3] = {0.0, 0.0, 0.0};
    rwadyn_kernel* k = nullptr;
    CHECK(rwadyn_kernel_from_samples(static_cast<rwadyn_kernel_kind>(7), 0.0, 0.1, re, im, 3, &k) ==
          RWADYN_ERR_INVALID_ARGUMENT);
    CHECK(rwadyn_kernel_from_samples(RWADYN_KERNEL_ZERO_T, 0.0, -0.1, re, im, 3, &k) == RWADYN_ERR_DOMAIN);
    REQUIRE(rwadyn_kernel_from_samples(RWADYN_KERNEL_RESTRICTED_THERMAL, 2.0, 0.1, re, im, 3, &k) == RWADYN_OK);
    CHECK(rwadyn_kernel_get_kind(k) == RWADYN_KERNEL_RESTRICTED_THERMAL);
    double out_re[3], out_im[3];
    rwadyn_kernel_values(k, out_re, out_im, 3);
    CHECK(out_re[1] == 0.5);
    rwadyn_kernel_free(k);
}

TEST_CASE("scenarios through the C API") {
    rwadyn_scenario* sc = nullptr;
    CHECK(rwadyn_scenario_figure1(0.0, &sc) == RWADYN_ERR_CONFIG);
    REQUIRE(rwadyn_scenario_figure1(0.5, &sc) == RWADYN_OK);
    const std::size_t n = rwadyn_scenario_format(sc, nullptr, 0);
    std::string text(n, '\0');
    CHECK(rwadyn_scenario_format(sc, text.data(), n + 1) == n);
    CHECK(text.find("g = 0.5\n") != std::string::npos);
    char tiny[8];
    rwadyn_scenario_format(sc, tiny, sizeof tiny);
    CHECK(std::string(tiny) == text.substr(0, 7));
    rwadyn_scenario_free(sc);

    const auto dir = std::filesystem::temp_directory_path() / "rwadyn_test_c_api";
    std::filesystem::create_directories(dir);
    REQUIRE(rwadyn_scenario_parse("model = oracle-compare\ng = 1\nt_max = 1\ndt = 0.01\n", &sc) == RWADYN_OK);
    const std::string out = (dir / "cmp.csv").string();
    CHECK(rwadyn_scenario_set_output(sc, "") == RWADYN_ERR_CONFIG);
    REQUIRE(rwadyn_scenario_set_output(sc, out.c_str()) == RWADYN_OK);
    rwadyn_report* report = nullptr;
    REQUIRE(rwadyn_scenario_run(sc, 0, &report) == RWADYN_OK);
    CHECK(std::string(rwadyn_report_csv_path(report)) == out);
    CHECK(std::filesystem::exists(rwadyn_report_manifest_path(report)));
    double diff = -1.0;
    CHECK(rwadyn_report_max_abs_diff(report, &diff) == 1);
    CHECK(diff <= 1e-3);
    rwadyn_report_free(report);

    REQUIRE(rwadyn_scenario_set_output(sc, (dir / "no" / "such" / "dir.csv").string().c_str()) == RWADYN_OK);
    CHECK(rwadyn_scenario_run(sc, 0, &report) == RWADYN_ERR_IO);
    rwadyn_scenario_free(sc);
    CHECK(rwadyn_scenario_load((dir / "missing.cfg").string().c_str(), &sc) == RWADYN_ERR_CONFIG);
    std::filesystem::remove_all(dir);
}
