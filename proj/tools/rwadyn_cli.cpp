// rwadyn: batch front-end over the rwadyn C library.
//
//   rwadyn run <config>
//   rwadyn compare <config>
//   rwadyn preset figure1 --g <value> --out <path> [--write-config]
//
// Exit codes: 0 success, 2 configuration or I/O error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "rwadyn/rwadyn.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

int exit_code_for(rwadyn_status status) {
    switch (status) {
        case RWADYN_OK: return kExitOk;
        case RWADYN_ERR_CONFIG:
        case RWADYN_ERR_IO:
        case RWADYN_ERR_INVALID_ARGUMENT: return kExitConfig;
        default: return kExitNumeric;
    }
}

int report_failure(rwadyn_status status, const std::string& context) {
    std::fprintf(stderr, "rwadyn: %s: %s (%s)\n", context.c_str(), rwadyn_last_error(),
                 rwadyn_status_name(status));
    return exit_code_for(status);
}

int execute(rwadyn_scenario* scenario, bool compare) {
    rwadyn_report* report = nullptr;
    const rwadyn_status st = rwadyn_scenario_run(scenario, compare ? 1 : 0, &report);
    if (st != RWADYN_OK) return report_failure(st, "run failed");
    std::printf("wrote %s\n", rwadyn_report_csv_path(report));
    std::printf("wrote %s\n", rwadyn_report_manifest_path(report));
    double diff = 0.0;
    if (rwadyn_report_max_abs_diff(report, &diff)) std::printf("max_abs_diff = %.6e\n", diff);
    rwadyn_report_free(report);
    return kExitOk;
}

int run_config(const std::string& path, bool compare) {
    rwadyn_scenario* scenario = nullptr;
    const rwadyn_status st = rwadyn_scenario_load(path.c_str(), &scenario);
    if (st != RWADYN_OK) return report_failure(st, path);
    const int code = execute(scenario, compare);
    rwadyn_scenario_free(scenario);
    return code;
}

int run_preset(const std::string& name, double g, const std::string& out, bool write_config) {
    if (name != "figure1") {
        std::fprintf(stderr, "rwadyn: unknown preset '%s' (available: figure1)\n", name.c_str());
        return kExitConfig;
    }
    rwadyn_scenario* scenario = nullptr;
    rwadyn_status st = rwadyn_scenario_figure1(g, &scenario);
    if (st != RWADYN_OK) return report_failure(st, "preset figure1");

    int code = kExitOk;
    if (write_config) {
        const std::size_t n = rwadyn_scenario_format(scenario, nullptr, 0);
        std::string text(n, '\0');
        rwadyn_scenario_format(scenario, text.data(), n + 1);
        std::ofstream os(out, std::ios::binary);
        if (!(os << text)) {
            std::fprintf(stderr, "rwadyn: cannot write %s\n", out.c_str());
            code = kExitConfig;
        } else {
            std::printf("wrote %s\n", out.c_str());
        }
    } else if ((st = rwadyn_scenario_set_output(scenario, out.c_str())) != RWADYN_OK) {
        code = report_failure(st, "preset figure1");
    } else {
        code = execute(scenario, false);
    }
    rwadyn_scenario_free(scenario);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduced dynamics of a level coupled to a Lorentzian bath"};
    app.set_version_flag("--version", std::string(rwadyn_version()));
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
    run->add_option("config", config_path, "Scenario config (key = value)")->required();

    auto* compare = app.add_subcommand("compare", "Run a scenario alongside the finite-mode oracle");
    compare->add_option("config", config_path, "Scenario config (key = value)")->required();

    std::string preset_name;
    double g = 0.0;
    std::string out;
    bool write_config = false;
    auto* preset = app.add_subcommand("preset", "Run a built-in parameter set");
    preset->add_option("name", preset_name, "Preset name (figure1)")->required();
    preset->add_option("--g", g, "Coupling in units of the Lorentz width")->required();
    preset->add_option("--out", out, "Output CSV path (or config path with --write-config)")
        ->required();
    preset->add_flag("--write-config", write_config, "Write the resolved config instead of running");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (*run) return run_config(config_path, false);
    if (*compare) return run_config(config_path, true);
    return run_preset(preset_name, g, out, write_config);
}
