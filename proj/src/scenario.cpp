#include "rwadyn/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "numfmt.hpp"
#include "rwadyn/version.hpp"

namespace rwadyn {

const char* to_string(Model model) {
    switch (model) {
        case Model::Friedrichs: return "friedrichs";
        case Model::Oscillator: return "oscillator";
        case Model::OracleCompare: return "oracle-compare";
    }
    return "unknown";
}

const char* to_string(KernelMode mode) {
    return mode == KernelMode::HalfLine ? "half_line" : "full_line";
}

namespace {

using detail::fmt_double;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& v, std::size_t line) {
    if (v == "inf" || v == "+inf" || v == "infinity") return kInfinity;
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ConfigError("expected a real number, got '" + v + "'", line);
    return out;
}

std::size_t parse_count(const std::string& v, std::size_t line) {
    std::size_t out = 0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ConfigError("expected a nonnegative integer, got '" + v + "'", line);
    return out;
}

int parse_int(const std::string& v, std::size_t line) {
    int out = 0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, out);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ConfigError("expected an integer, got '" + v + "'", line);
    return out;
}

bool parse_bool(const std::string& v, std::size_t line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("expected true or false, got '" + v + "'", line);
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, std::size_t)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"model",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) {
             if (v == "friedrichs") c.model = Model::Friedrichs;
             else if (v == "oscillator") c.model = Model::Oscillator;
             else if (v == "oracle-compare") c.model = Model::OracleCompare;
             else throw ConfigError("unknown model '" + v + "'", l);
         }},
        {"kernel_mode",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) {
             if (v == "half_line") c.kernel_mode = KernelMode::HalfLine;
             else if (v == "full_line") c.kernel_mode = KernelMode::FullLine;
             else throw ConfigError("unknown kernel_mode '" + v + "'", l);
         }},
        {"gamma", [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.gamma = parse_real(v, l); }},
        {"omega", [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.omega = parse_real(v, l); }},
        {"omega_c", [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.omega_c = parse_real(v, l); }},
        {"g", [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.g = parse_real(v, l); }},
        {"beta", [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.beta = parse_real(v, l); }},
        {"p", [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.p = parse_real(v, l); }},
        {"c", [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.c = parse_real(v, l); }},
        {"omega_min", [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.omega_min = parse_real(v, l); }},
        {"omega_max", [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.omega_max = parse_real(v, l); }},
        {"t_max", [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.t_max = parse_real(v, l); }},
        {"dt", [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.dt = parse_real(v, l); }},
        {"quad.points_per_period",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.quad.points_per_period = parse_int(v, l); }},
        {"quad.nodes_per_panel",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.quad.nodes_per_panel = parse_int(v, l); }},
        {"quad.tolerance",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.quad.tolerance = parse_real(v, l); }},
        {"quad.tail_tolerance",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.quad.tail_tolerance = parse_real(v, l); }},
        {"quad.max_panels",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.quad.max_panels = parse_count(v, l); }},
        {"solver.corrector_iterations",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.corrector_iterations = parse_int(v, l); }},
        {"solver.refine",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.refine = parse_bool(v, l); }},
        {"oracle.modes",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.oracle_modes = parse_count(v, l); }},
        {"oracle.max_phase_step",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.oracle_max_phase_step = parse_real(v, l); }},
        {"oscillator.a_re",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.oscillator.mean_a.real(parse_real(v, l)); }},
        {"oscillator.a_im",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.oscillator.mean_a.imag(parse_real(v, l)); }},
        {"oscillator.number",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.oscillator.number = parse_real(v, l); }},
        {"oscillator.aa_re",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.oscillator.mean_aa.real(parse_real(v, l)); }},
        {"oscillator.aa_im",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.oscillator.mean_aa.imag(parse_real(v, l)); }},
        {"output",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) {
             if (v.empty()) throw ConfigError("output path is empty", l);
             c.output = v;
         }},
        {"output_stride",
         [](ScenarioConfig& c, const std::string& v, std::size_t l) { c.output_stride = parse_count(v, l); }},
    };
    return table;
}

using LineOf = std::function<std::size_t(const char*)>;

void check(bool ok, const char* key, const std::string& msg, const LineOf& line_of) {
    if (!ok) throw ConfigError(std::string(key) + ": " + msg, line_of(key));
}

void validate_impl(const ScenarioConfig& c, const LineOf& line_of) {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    check(positive(c.gamma), "gamma", "must be positive", line_of);
    check(positive(c.omega), "omega", "must be positive", line_of);
    check(!c.omega_c || positive(*c.omega_c), "omega_c", "must be positive", line_of);
    check(c.g >= 0.0 && std::isfinite(c.g), "g", "must be nonnegative", line_of);
    check(positive(c.beta), "beta", "must be positive", line_of);
    check(c.p >= 0.0 && c.p <= 1.0, "p", "must lie in [0, 1]", line_of);
    check(positive(c.c), "c", "must be positive", line_of);
    const double wmin = resolved_omega_min(c);
    check(wmin >= 0.0 && std::isfinite(wmin), "omega_min", "must be >= 0", line_of);
    check(c.omega_max > wmin, "omega_max", "must exceed omega_min", line_of);
    if (c.model == Model::Oscillator)
        check(wmin > 0.0, "omega_min",
              "must be > 0 for the oscillator model (Bose weight diverges at 0)", line_of);
    check(positive(c.dt), "dt", "must be positive", line_of);
    check(positive(c.t_max), "t_max", "must be positive", line_of);
    const double ratio = c.t_max / c.dt;
    check(std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio), "t_max",
          "must be an integer multiple of dt", line_of);
    check(c.quad.points_per_period >= 1, "quad.points_per_period", "must be >= 1", line_of);
    check(c.quad.nodes_per_panel >= 1, "quad.nodes_per_panel", "must be >= 1", line_of);
    check(c.quad.tolerance > 0.0 && c.quad.tolerance < 1.0, "quad.tolerance",
          "must lie in (0, 1)", line_of);
    check(c.quad.tail_tolerance > 0.0 && c.quad.tail_tolerance < 1.0, "quad.tail_tolerance",
          "must lie in (0, 1)", line_of);
    check(c.quad.max_panels >= 1, "quad.max_panels", "must be >= 1", line_of);
    check(c.corrector_iterations >= 1, "solver.corrector_iterations", "must be >= 1", line_of);
    check(c.oracle_modes >= 1, "oracle.modes", "must be >= 1", line_of);
    check(positive(c.oracle_max_phase_step), "oracle.max_phase_step", "must be positive", line_of);
    check(c.oscillator.number >= 0.0, "oscillator.number", "must be >= 0", line_of);
    check(std::norm(c.oscillator.mean_a) <= c.oscillator.number * (1.0 + 1e-12) + 1e-300,
          "oscillator.a_re", "|<a(0)>|^2 must not exceed oscillator.number", line_of);
    check(!c.output.empty(), "output", "must not be empty", line_of);
    check(c.output_stride >= 1, "output_stride", "must be >= 1", line_of);
    if (std::isfinite(c.omega_max) && c.g > 0.0) {
        const double bound = lorentz_tail_bound(spectral_density(c), c.omega_max);
        check(bound <= c.quad.tail_tolerance * c.g * c.g, "omega_max",
              "window truncation exceeds quad.tail_tolerance", line_of);
    }
}

}  // namespace

double resolved_omega_min(const ScenarioConfig& cfg) {
    if (cfg.omega_min) return *cfg.omega_min;
    return cfg.model == Model::Oscillator ? 0.5 * cfg.gamma : 0.0;
}

std::size_t step_count(const ScenarioConfig& cfg) {
    return static_cast<std::size_t>(std::llround(cfg.t_max / cfg.dt));
}

SpectralDensity spectral_density(const ScenarioConfig& cfg) {
    SpectralDensity spec;
    spec.coupling = cfg.g;
    spec.width = cfg.gamma;
    spec.center = cfg.omega_c.value_or(cfg.omega);
    spec.window = {resolved_omega_min(cfg), cfg.omega_max};
    return spec;
}

void validate(const ScenarioConfig& cfg) {
    validate_impl(cfg, [](const char*) { return std::size_t{0}; });
}

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::map<std::string, std::size_t> seen;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before '='", line);
        if (value.empty()) throw ConfigError("missing value for '" + key + "'", line);
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("unknown key '" + key + "'", line);
        if (seen.count(key))
            throw ConfigError("duplicate key '" + key + "' (first set on line " +
                                  std::to_string(seen[key]) + ")",
                              line);
        seen[key] = line;
        it->second(cfg, value, line);
    }
    validate_impl(cfg, [&](const char* key) {
        const auto it = seen.find(key);
        return it == seen.end() ? std::size_t{0} : it->second;
    });
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_config(const ScenarioConfig& c) {
    std::ostringstream os;
    os << "# rwadyn scenario\n";
    os << "model = " << to_string(c.model) << '\n';
    os << "kernel_mode = " << to_string(c.kernel_mode) << '\n';
    os << "gamma = " << fmt_double(c.gamma) << '\n';
    os << "omega = " << fmt_double(c.omega) << '\n';
    if (c.omega_c) os << "omega_c = " << fmt_double(*c.omega_c) << '\n';
    os << "g = " << fmt_double(c.g) << '\n';
    os << "beta = " << fmt_double(c.beta) << '\n';
    os << "p = " << fmt_double(c.p) << '\n';
    os << "c = " << fmt_double(c.c) << '\n';
    if (c.omega_min) os << "omega_min = " << fmt_double(*c.omega_min) << '\n';
    os << "omega_max = " << fmt_double(c.omega_max) << '\n';
    os << "t_max = " << fmt_double(c.t_max) << '\n';
    os << "dt = " << fmt_double(c.dt) << '\n';
    os << "quad.points_per_period = " << c.quad.points_per_period << '\n';
    os << "quad.nodes_per_panel = " << c.quad.nodes_per_panel << '\n';
    os << "quad.tolerance = " << fmt_double(c.quad.tolerance) << '\n';
    os << "quad.tail_tolerance = " << fmt_double(c.quad.tail_tolerance) << '\n';
    os << "quad.max_panels = " << c.quad.max_panels << '\n';
    os << "solver.corrector_iterations = " << c.corrector_iterations << '\n';
    os << "solver.refine = " << (c.refine ? "true" : "false") << '\n';
    os << "oracle.modes = " << c.oracle_modes << '\n';
    os << "oracle.max_phase_step = " << fmt_double(c.oracle_max_phase_step) << '\n';
    os << "oscillator.a_re = " << fmt_double(c.oscillator.mean_a.real()) << '\n';
    os << "oscillator.a_im = " << fmt_double(c.oscillator.mean_a.imag()) << '\n';
    os << "oscillator.number = " << fmt_double(c.oscillator.number) << '\n';
    os << "oscillator.aa_re = " << fmt_double(c.oscillator.mean_aa.real()) << '\n';
    os << "oscillator.aa_im = " << fmt_double(c.oscillator.mean_aa.imag()) << '\n';
    os << "output = " << c.output << '\n';
    os << "output_stride = " << c.output_stride << '\n';
    return os.str();
}

ScenarioConfig figure1_preset(double g_over_gamma) {
    if (!(g_over_gamma > 0.0) || !std::isfinite(g_over_gamma))
        throw ConfigError("figure1 preset: g/gamma must be positive", 0);
    ScenarioConfig c;
    c.model = Model::Friedrichs;
    c.gamma = 1.0;
    c.omega = 5.0;
    c.g = g_over_gamma;
    c.beta = 0.5;
    c.p = 0.3;
    c.c = 100.0;
    c.t_max = 10.0;
    c.dt = 1e-3;
    c.oracle_modes = 2000;
    return c;
}

std::string ScenarioResult::csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += fmt_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string ScenarioResult::manifest_text() const {
    std::string out;
    for (const auto& [k, v] : manifest) out += k + " = " + v + '\n';
    return out;
}

namespace {

template <class F>
auto with_context(const char* stage, F&& build) {
    try {
        return build();
    } catch (const QuadratureFailure& e) {
        throw QuadratureFailure(std::string(stage) + ": " + e.what(), e.achieved_error);
    }
}

}  // namespace

ScenarioResult compute_scenario(const ScenarioConfig& cfg, bool compare) {
    validate(cfg);
    const bool friedrichs = cfg.model != Model::Oscillator;
    compare = compare || cfg.model == Model::OracleCompare;

    const TimeGrid grid{cfg.dt, step_count(cfg) + 1};
    const SpectralDensity spec = spectral_density(cfg);
    const FrequencyWindow window = resolve_window(spec, cfg.quad);
    const double z = partition_restricted(Dispersion{cfg.c}, cfg.beta);

    ScenarioResult res;
    auto put = [&](const std::string& k, const std::string& v) { res.manifest.emplace_back(k, v); };
    auto putd = [&](const std::string& k, double v) { put(k, fmt_double(v)); };

    put("rwadyn_version", kVersionString);
    put("model", to_string(cfg.model));
    put("comparison", compare ? "oracle" : "none");
    put("kernel_mode", to_string(cfg.kernel_mode));
    putd("gamma", cfg.gamma);
    putd("omega", cfg.omega);
    putd("omega_over_gamma", cfg.omega / cfg.gamma);
    putd("omega_c", spec.center);
    putd("omega_c_over_gamma", spec.center / cfg.gamma);
    putd("g", cfg.g);
    putd("g_over_gamma", cfg.g / cfg.gamma);
    putd("beta", cfg.beta);
    putd("beta_gamma", cfg.beta * cfg.gamma);
    if (friedrichs) putd("p", cfg.p);
    putd("c", cfg.c);
    putd("c_over_gamma", cfg.c / cfg.gamma);
    putd("partition_z", z);
    putd("omega_min", window.lo);
    putd("omega_min_over_gamma", window.lo / cfg.gamma);
    putd("omega_max_requested", cfg.omega_max);
    putd("omega_max", window.hi);
    putd("omega_max_over_gamma", window.hi / cfg.gamma);
    putd("t_max", cfg.t_max);
    putd("gamma_t_max", cfg.gamma * cfg.t_max);
    putd("dt", cfg.dt);
    putd("gamma_dt", cfg.gamma * cfg.dt);
    put("steps", std::to_string(grid.count - 1));
    put("quad.points_per_period", std::to_string(cfg.quad.points_per_period));
    put("quad.nodes_per_panel", std::to_string(cfg.quad.nodes_per_panel));
    putd("quad.tolerance", cfg.quad.tolerance);
    putd("quad.tail_tolerance", cfg.quad.tail_tolerance);
    put("quad.max_panels", std::to_string(cfg.quad.max_panels));
    put("solver.scheme", "rotating-frame trapezoidal product integration, PECE");
    putd("solver.dt", cfg.dt);
    put("solver.corrector_iterations", std::to_string(cfg.corrector_iterations));
    put("solver.refine", cfg.refine ? "true" : "false");
    if (!friedrichs) {
        putd("oscillator.a_re", cfg.oscillator.mean_a.real());
        putd("oscillator.a_im", cfg.oscillator.mean_a.imag());
        putd("oscillator.number", cfg.oscillator.number);
        putd("oscillator.aa_re", cfg.oscillator.mean_aa.real());
        putd("oscillator.aa_im", cfg.oscillator.mean_aa.imag());
    }
    put("output", cfg.output);
    put("output_stride", std::to_string(cfg.output_stride));

    const KernelSamples g0 = with_context("zero-temperature kernel", [&] {
        return cfg.kernel_mode == KernelMode::FullLine ? full_line_lorentz_samples(spec, grid)
                                                       : kernel_zero_t(spec, grid, cfg.quad);
    });
    put("kernel.zero_t.source", cfg.kernel_mode == KernelMode::FullLine ? "closed form" : "quadrature");
    put("kernel.zero_t.panels", std::to_string(g0.panels));
    putd("kernel.zero_t.error_estimate", g0.error_estimate);
    putd("kernel.zero_t.tail_bound", g0.tail_bound);

    SolverConfig solver{cfg.dt, cfg.corrector_iterations, cfg.refine};
    const Trajectory x = solve_amplitude(cfg.omega, g0, grid.count, solver);
    if (x.error_estimate) putd("solver.error_estimate", *x.error_estimate);

    const KernelSamples thermal = with_context("thermal kernel", [&] {
        return friedrichs ? kernel_restricted_thermal(spec, cfg.beta, grid, cfg.quad)
                          : kernel_full_thermal(spec, cfg.beta, grid, cfg.quad);
    });
    const std::string tk = std::string("kernel.") + to_string(thermal.kind);
    put(tk + ".panels", std::to_string(thermal.panels));
    putd(tk + ".error_estimate", thermal.error_estimate);
    putd(tk + ".tail_bound", thermal.tail_bound);

    ObservableSeries series =
        friedrichs ? excited_population(x, thermal, FriedrichsInitial{cfg.p, z, cfg.beta})
                   : oscillator_moments(x, thermal, cfg.oscillator);

    std::optional<ObservableSeries> reference;
    if (compare) {
        const DiscreteBath bath = discretize_bath(spec, cfg.oracle_modes, window);
        PropagationConfig pc;
        pc.max_phase_step = cfg.oracle_max_phase_step;
        PropagationStats stats;
        reference = friedrichs ? oracle_population(bath, cfg.omega,
                                                   FriedrichsInitial{cfg.p, z, cfg.beta}, grid,
                                                   pc, &stats)
                               : oracle_oscillator_moments(bath, cfg.omega, cfg.beta,
                                                           cfg.oscillator, grid, pc, &stats);
        put("oracle.modes", std::to_string(cfg.oracle_modes));
        putd("oracle.spacing", bath.spacing);
        putd("oracle.recurrence_time", bath.recurrence_time());
        putd("oracle.max_phase_step", cfg.oracle_max_phase_step);
        put("oracle.substeps", std::to_string(stats.substeps));
        putd("oracle.step", stats.step);
        putd("oracle.max_norm_drift", stats.max_norm_drift);
    }

    const std::string name = friedrichs ? "rho11" : "ada";
    if (compare) {
        res.columns = {"t", name + "_volterra", name + "_oracle", "abs_diff"};
    } else if (friedrichs) {
        res.columns = {"t", "rho11"};
    } else {
        res.columns = {"t", "ada", "re_a", "im_a", "re_aa", "im_aa"};
    }

    double max_diff = 0.0;
    for (std::size_t n = 0; n < grid.count; ++n) {
        double diff = 0.0;
        if (compare) {
            diff = std::abs(series.population[n] - reference->population[n]);
            max_diff = std::max(max_diff, diff);
        }
        if (n % cfg.output_stride != 0 && n + 1 != grid.count) continue;
        const double t = grid.time(n);
        if (compare) {
            res.rows.push_back({t, series.population[n], reference->population[n], diff});
        } else if (friedrichs) {
            res.rows.push_back({t, series.population[n]});
        } else {
            const cplx a = (*series.mean_a)[n];
            const cplx aa = (*series.mean_aa)[n];
            res.rows.push_back({t, series.population[n], a.real(), a.imag(), aa.real(), aa.imag()});
        }
    }
    if (compare) {
        res.max_abs_diff = max_diff;
        putd("max_abs_diff", max_diff);
    }
    return res;
}

std::string manifest_path_for(const std::string& csv_path) { return csv_path + ".manifest"; }

RunReport run_scenario(const ScenarioConfig& cfg, bool compare) {
    const ScenarioResult res = compute_scenario(cfg, compare);
    RunReport report;
    report.csv_path = cfg.output;
    report.manifest_path = manifest_path_for(cfg.output);
    report.max_abs_diff = res.max_abs_diff;

    auto write = [](const std::string& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + path + "' for writing");
        out << text;
        if (!out) throw IoError("failed writing '" + path + "'");
    };
    write(report.csv_path, res.csv());
    write(report.manifest_path, res.manifest_text());
    return report;
}

}  // namespace rwadyn
