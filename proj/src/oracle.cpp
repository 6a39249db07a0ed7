#include "rwadyn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rwadyn {

cplx DiscreteBath::kernel(double t) const {
    cplx acc{};
    for (std::size_t j = 0; j < size(); ++j)
        acc += couplings[j] * couplings[j] * std::polar(1.0, -frequencies[j] * t);
    return acc;
}

DiscreteBath discretize_bath(const SpectralDensity& spec, std::size_t modes,
                             FrequencyWindow window) {
    validate(spec);
    if (modes < 1) throw DomainError("discretize_bath: need at least one mode");
    if (!std::isfinite(window.lo) || !std::isfinite(window.hi) || !(window.hi > window.lo))
        throw DomainError("discretize_bath: window must be finite and nonempty");
    if (window.lo < spec.window.lo || window.hi > spec.window.hi) {
        std::ostringstream os;
        os << "discretize_bath: window [" << window.lo << ", " << window.hi
           << "] lies outside the spectral support [" << spec.window.lo << ", " << spec.window.hi
           << "]";
        throw DomainError(os.str());
    }

    DiscreteBath bath;
    bath.window = window;
    bath.spacing = window.width() / static_cast<double>(modes);
    bath.frequencies.resize(modes);
    bath.couplings.resize(modes);
    for (std::size_t j = 0; j < modes; ++j) {
        const double w = window.lo + (static_cast<double>(j) + 0.5) * bath.spacing;
        bath.frequencies[j] = w;
        bath.couplings[j] = std::sqrt(eval_spectral_density(spec, w) * bath.spacing / kTwoPi);
    }
    return bath;
}

namespace {

// out = -i H v for the arrowhead H = [[omega, g^T], [g, diag(w)]]
void apply_generator(const DiscreteBath& bath, double omega, std::span<const cplx> v,
                     std::span<cplx> out) {
    const cplx minus_i{0.0, -1.0};
    const std::size_t m = bath.size();
    cplx top = omega * v[0];
    for (std::size_t j = 0; j < m; ++j) {
        top += bath.couplings[j] * v[j + 1];
        out[j + 1] = minus_i * (bath.frequencies[j] * v[j + 1] + bath.couplings[j] * v[0]);
    }
    out[0] = minus_i * top;
}

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return s;
}

}  // namespace

PropagationStats propagate_one_excitation(
    const DiscreteBath& bath, double omega, const TimeGrid& grid, const PropagationConfig& cfg,
    const std::function<void(std::size_t, std::span<const cplx>)>& observer) {
    validate(grid);
    if (!(cfg.max_phase_step > 0.0)) throw DomainError("propagation: max_phase_step must be positive");

    // ||H||_2 <= ||diag||_2 + ||g||_2
    double diag = std::abs(omega);
    double gnorm2 = 0.0;
    for (std::size_t j = 0; j < bath.size(); ++j) {
        diag = std::max(diag, std::abs(bath.frequencies[j]));
        gnorm2 += bath.couplings[j] * bath.couplings[j];
    }
    const double h_norm = diag + std::sqrt(gnorm2);

    PropagationStats stats;
    stats.substeps = cfg.substeps
                         ? cfg.substeps
                         : std::max<std::size_t>(
                               1, static_cast<std::size_t>(
                                      std::ceil(grid.dt * h_norm / cfg.max_phase_step)));
    stats.step = grid.dt / static_cast<double>(stats.substeps);
    // RK4 is stable on the imaginary axis up to 2 sqrt(2)
    if (stats.step * h_norm > 2.8) {
        std::ostringstream os;
        os << "propagation: step " << stats.step << " times ||H|| = " << stats.step * h_norm
           << " exceeds the RK4 stability limit";
        throw StabilityError(os.str());
    }

    const std::size_t dim = bath.size() + 1;
    std::vector<cplx> v(dim, cplx{}), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    v[0] = 1.0;
    const double h = stats.step;

    observer(0, v);
    for (std::size_t n = 1; n < grid.count; ++n) {
        for (std::size_t s = 0; s < stats.substeps; ++s) {
            apply_generator(bath, omega, v, k1);
            for (std::size_t i = 0; i < dim; ++i) tmp[i] = v[i] + 0.5 * h * k1[i];
            apply_generator(bath, omega, tmp, k2);
            for (std::size_t i = 0; i < dim; ++i) tmp[i] = v[i] + 0.5 * h * k2[i];
            apply_generator(bath, omega, tmp, k3);
            for (std::size_t i = 0; i < dim; ++i) tmp[i] = v[i] + h * k3[i];
            apply_generator(bath, omega, tmp, k4);
            for (std::size_t i = 0; i < dim; ++i)
                v[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        stats.max_norm_drift = std::max(stats.max_norm_drift, std::abs(norm2(v) - 1.0));
        observer(n, v);
    }
    return stats;
}

OneExcitationHistory propagate_one_excitation(const DiscreteBath& bath, double omega,
                                              const TimeGrid& grid,
                                              const PropagationConfig& cfg) {
    OneExcitationHistory hist;
    hist.system.resize(grid.count);
    hist.modes.resize(grid.count);
    hist.stats = propagate_one_excitation(
        bath, omega, grid, cfg, [&](std::size_t n, std::span<const cplx> state) {
            hist.system[n] = state[0];
            hist.modes[n].assign(state.begin() + 1, state.end());
        });
    return hist;
}

ObservableSeries oracle_population(const DiscreteBath& bath, double omega,
                                   const FriedrichsInitial& init, const TimeGrid& grid,
                                   const PropagationConfig& cfg, PropagationStats* stats) {
    validate(init);
    std::vector<double> boltzmann(bath.size());
    for (std::size_t j = 0; j < bath.size(); ++j)
        boltzmann[j] = std::exp(-init.beta * bath.frequencies[j]);

    ObservableSeries out;
    out.dt = grid.dt;
    out.population.resize(grid.count);
    const auto st = propagate_one_excitation(
        bath, omega, grid, cfg, [&](std::size_t n, std::span<const cplx> state) {
            double thermal = 0.0;
            for (std::size_t j = 0; j < bath.size(); ++j)
                thermal += boltzmann[j] * std::norm(state[j + 1]);
            out.population[n] =
                (init.p * std::norm(state[0]) + (1.0 - init.p) * thermal) / init.z;
        });
    out.population[0] = init.p / init.z;
    if (stats) *stats = st;
    return out;
}

ObservableSeries oracle_oscillator_moments(const DiscreteBath& bath, double omega, double beta,
                                           const OscillatorInitial& init, const TimeGrid& grid,
                                           const PropagationConfig& cfg,
                                           PropagationStats* stats) {
    validate(init);
    if (!(beta > 0.0)) throw DomainError("oracle oscillator: beta must be positive");
    const bool coupled =
        std::any_of(bath.couplings.begin(), bath.couplings.end(), [](double g) { return g > 0.0; });
    if (bath.window.lo <= 0.0 && coupled)
        throw InfraredDivergence(
            "oracle oscillator: Bose occupations need a strictly positive lower window edge");

    std::vector<double> occupation(bath.size());
    for (std::size_t j = 0; j < bath.size(); ++j)
        occupation[j] = 1.0 / std::expm1(beta * bath.frequencies[j]);

    ObservableSeries out;
    out.dt = grid.dt;
    out.population.resize(grid.count);
    std::vector<cplx> a(grid.count), aa(grid.count);
    const auto st = propagate_one_excitation(
        bath, omega, grid, cfg, [&](std::size_t n, std::span<const cplx> state) {
            double thermal = 0.0;
            for (std::size_t j = 0; j < bath.size(); ++j)
                thermal += occupation[j] * std::norm(state[j + 1]);
            out.population[n] = std::norm(state[0]) * init.number + thermal;
            a[n] = state[0] * init.mean_a;
            aa[n] = state[0] * state[0] * init.mean_aa;
        });
    out.mean_a = std::move(a);
    out.mean_aa = std::move(aa);
    if (stats) *stats = st;
    return out;
}

}  // namespace rwadyn
