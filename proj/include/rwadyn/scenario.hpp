// scenario.hpp: batch scenarios: flat key = value configs, CSV results and run manifests

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rwadyn/bath.hpp"
#include "rwadyn/memory_solver.hpp"
#include "rwadyn/observables.hpp"
#include "rwadyn/oracle.hpp"

namespace rwadyn {

enum class Model { Friedrichs, Oscillator, OracleCompare };
enum class KernelMode { HalfLine, FullLine };

const char* to_string(Model model);
const char* to_string(KernelMode mode);

// All rates in absolute units; gamma defaults to 1 so plain numbers read as
// multiples of gamma.
struct ScenarioConfig {
    Model model{Model::Friedrichs};
    KernelMode kernel_mode{KernelMode::HalfLine};

    double gamma{1.0};
    double omega{5.0};                   // system frequency
    std::optional<double> omega_c;       // Lorentz center; defaults to omega
    double g{0.5};
    double beta{0.5};
    double p{0.3};
    double c{100.0};                     // dispersion slope, only enters Z
    std::optional<double> omega_min;     // default 0 (friedrichs) or 0.5 gamma (oscillator)
    double omega_max{kInfinity};
    double t_max{10.0};
    double dt{1e-3};

    QuadratureConfig quad{};
    int corrector_iterations{2};
    bool refine{false};

    std::size_t oracle_modes{2000};
    double oracle_max_phase_step{0.1};

    OscillatorInitial oscillator{};

    std::string output{"results.csv"};
    std::size_t output_stride{1};
};

// Parses `text`; errors carry 1-based line numbers.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Canonical key = value rendering that parse_config reads back.
std::string format_config(const ScenarioConfig& cfg);

void validate(const ScenarioConfig& cfg);

// Reference parameter set in gamma = 1 units: Omega = 5, p = 0.3, beta = 0.5, c = 100,
// t_max = 10, dt = 1e-3.
ScenarioConfig figure1_preset(double g_over_gamma);

double resolved_omega_min(const ScenarioConfig& cfg);
std::size_t step_count(const ScenarioConfig& cfg);  // t_max / dt
SpectralDensity spectral_density(const ScenarioConfig& cfg);

using Manifest = std::vector<std::pair<std::string, std::string>>;

struct ScenarioResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    Manifest manifest;
    std::optional<double> max_abs_diff;  // comparison runs only

    std::string csv() const;
    std::string manifest_text() const;
};

// Runs the pipeline. With `compare`, the oracle runs alongside the Volterra path
// and the result holds both columns plus their absolute difference.
ScenarioResult compute_scenario(const ScenarioConfig& cfg, bool compare = false);

struct RunReport {
    std::string csv_path;
    std::string manifest_path;
    std::optional<double> max_abs_diff;
};

std::string manifest_path_for(const std::string& csv_path);

// compute_scenario + write CSV to cfg.output and the manifest next to it.
RunReport run_scenario(const ScenarioConfig& cfg, bool compare = false);

}  // namespace rwadyn
