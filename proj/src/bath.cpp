#include "rwadyn/bath.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "gauss_legendre.hpp"
#include "numfmt.hpp"

namespace rwadyn {

void validate(const TimeGrid& grid) {
    if (!(grid.dt > 0.0) || !std::isfinite(grid.dt))
        throw DomainError("time grid: dt must be positive and finite");
    if (grid.count < 1) throw DomainError("time grid: at least one sample required");
}

bool same_step(double dt_a, double dt_b) {
    return std::abs(dt_a - dt_b) <= 1e-12 * std::max(std::abs(dt_a), std::abs(dt_b));
}

SpectralDensity SpectralDensity::lorentz(double coupling, double width, double center,
                                         FrequencyWindow window) {
    SpectralDensity spec{coupling, width, center, window};
    validate(spec);
    return spec;
}

void validate(const SpectralDensity& spec) {
    // coupling == 0 is accepted as the degenerate J == 0 case
    if (!(spec.coupling >= 0.0) || !std::isfinite(spec.coupling))
        throw DomainError("spectral density: coupling must be nonnegative");
    if (!(spec.width > 0.0) || !std::isfinite(spec.width))
        throw DomainError("spectral density: width must be positive");
    if (!(spec.center > 0.0) || !std::isfinite(spec.center))
        throw DomainError("spectral density: center must be positive");
    if (!(spec.window.lo >= 0.0) || !std::isfinite(spec.window.lo))
        throw DomainError("spectral density: window lower edge must be >= 0");
    if (!(spec.window.hi > spec.window.lo))
        throw DomainError("spectral density: window upper edge must exceed the lower edge");
}

double eval_spectral_density(const SpectralDensity& spec, double omega) {
    if (!(omega >= 0.0)) throw DomainError("spectral density: negative frequency");
    if (omega < spec.window.lo || omega > spec.window.hi) return 0.0;
    const double half = 0.5 * spec.width;
    const double u = omega - spec.center;
    return spec.width * spec.coupling * spec.coupling / (half * half + u * u);
}

const char* to_string(KernelKind kind) {
    switch (kind) {
        case KernelKind::ZeroT: return "zero_t";
        case KernelKind::RestrictedThermal: return "restricted_thermal";
        case KernelKind::FullThermal: return "full_thermal";
    }
    return "unknown";
}

void validate(const QuadratureConfig& quad) {
    if (quad.points_per_period < 1) throw DomainError("quadrature: points_per_period must be >= 1");
    if (quad.nodes_per_panel < 1) throw DomainError("quadrature: nodes_per_panel must be >= 1");
    if (!(quad.tolerance > 0.0 && quad.tolerance < 1.0))
        throw DomainError("quadrature: tolerance must lie in (0, 1)");
    if (!(quad.tail_tolerance > 0.0 && quad.tail_tolerance < 1.0))
        throw DomainError("quadrature: tail_tolerance must lie in (0, 1)");
    if (quad.max_panels < 1) throw DomainError("quadrature: max_panels must be >= 1");
}

double lorentz_tail_bound(const SpectralDensity& spec, double hi) {
    if (!std::isfinite(hi)) return 0.0;
    if (hi <= spec.center) return kInfinity;
    return spec.coupling * spec.coupling * spec.width / (kTwoPi * (hi - spec.center));
}

FrequencyWindow resolve_window(const SpectralDensity& spec, const QuadratureConfig& quad) {
    validate(spec);
    validate(quad);
    FrequencyWindow w = spec.window;
    if (!std::isfinite(w.hi)) {
        const double k = 1.0 / (kTwoPi * quad.tail_tolerance);
        w.hi = std::max(spec.center + k * spec.width, w.lo + spec.width);
        return w;
    }
    const double g2 = spec.coupling * spec.coupling;
    if (g2 > 0.0 && lorentz_tail_bound(spec, w.hi) > quad.tail_tolerance * g2) {
        std::ostringstream os;
        os << "window upper edge " << w.hi << " violates the tail tolerance "
           << quad.tail_tolerance << " (bound " << lorentz_tail_bound(spec, w.hi) / g2
           << " relative to g^2)";
        throw DomainError(os.str());
    }
    return w;
}

namespace {

// Accumulates sum_i c_i e^{-i w_i t_n} for all n. Phases advance by a rotation
// factor and are reseeded exactly every kReseed steps.
void accumulate_nodes(const std::vector<double>& omega, const std::vector<double>& coeff,
                      const TimeGrid& grid, std::vector<cplx>& out) {
    constexpr std::size_t kReseed = 128;
    out.assign(grid.count, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const double c = coeff[i];
        if (c == 0.0) continue;
        const cplx rot = std::polar(1.0, -omega[i] * grid.dt);
        cplx phase{1.0, 0.0};
        for (std::size_t n = 0; n < grid.count; ++n) {
            if (n % kReseed == 0) phase = std::polar(1.0, -omega[i] * grid.time(n));
            out[n] += c * phase;
            phase *= rot;
        }
    }
}

// Panel-wise Gauss quadrature of int_lo^hi dw/(2 pi) e^{-i w t} J(w) weight(w),
// doubling the panel count until two successive levels agree to tolerance * |I(0)|.
// A positive decay_rate marks a weight falling like e^{-decay_rate (w - lo)}; the
// first 40/decay_rate of the window then gets panels narrow enough to resolve it.
KernelSamples oscillatory_quadrature(const SpectralDensity& spec, FrequencyWindow window,
                                     const std::function<double(double)>& weight,
                                     double decay_rate, const TimeGrid& grid,
                                     const QuadratureConfig& quad) {
    validate(grid);
    const auto rule = detail::gauss_legendre(quad.nodes_per_panel);

    // Panels resolve one oscillation at the largest grid time and the Lorentz width.
    double h = 0.5 * spec.width;
    if (grid.t_max() > 0.0) h = std::min(h, kTwoPi / (grid.t_max() * quad.points_per_period));

    struct Segment {
        double lo, hi;
        std::size_t panels;
    };
    auto panels_for = [](double width, double step) {
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(width / step)));
    };
    std::vector<Segment> segments;
    if (decay_rate > 0.0 && 0.25 / decay_rate < h) {
        const double edge = std::min(window.hi, window.lo + 40.0 / decay_rate);
        segments.push_back({window.lo, edge, panels_for(edge - window.lo, 0.25 / decay_rate)});
        if (edge < window.hi) segments.push_back({edge, window.hi, panels_for(window.hi - edge, h)});
    } else {
        segments.push_back({window.lo, window.hi, panels_for(window.width(), h)});
    }
    std::size_t panels = 0;
    for (const auto& seg : segments) panels += seg.panels;

    // level L splits every segment into L times its base panel count
    auto evaluate = [&](std::size_t level) {
        std::vector<double> omega;
        std::vector<double> coeff;
        omega.reserve(level * panels * rule.nodes.size());
        coeff.reserve(level * panels * rule.nodes.size());
        for (const auto& seg : segments) {
            const std::size_t p = level * seg.panels;
            const double hp = (seg.hi - seg.lo) / static_cast<double>(p);
            for (std::size_t k = 0; k < p; ++k) {
                const double mid = seg.lo + (static_cast<double>(k) + 0.5) * hp;
                for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                    const double w = mid + 0.5 * hp * rule.nodes[j];
                    omega.push_back(w);
                    coeff.push_back(0.5 * hp * rule.weights[j] * eval_spectral_density(spec, w) *
                                    weight(w) / kTwoPi);
                }
            }
        }
        std::vector<cplx> out;
        accumulate_nodes(omega, coeff, grid, out);
        return out;
    };

    KernelSamples result;
    result.dt = grid.dt;
    result.window = window;
    result.tail_bound = lorentz_tail_bound(spec, window.hi);

    std::size_t level = 1;
    std::vector<cplx> coarse = evaluate(level);
    double last_estimate = kInfinity;
    for (;;) {
        if (2 * level * panels > quad.max_panels) {
            std::ostringstream os;
            os << "oscillatory quadrature did not reach tolerance " << quad.tolerance
               << " within " << quad.max_panels << " panels";
            throw QuadratureFailure(os.str(), last_estimate);
        }
        std::vector<cplx> fine = evaluate(2 * level);
        double est = 0.0;
        for (std::size_t n = 0; n < fine.size(); ++n)
            est = std::max(est, std::abs(fine[n] - coarse[n]));
        const double scale = std::abs(fine[0]);
        result.error_estimate = est;
        last_estimate = est;
        if (est <= quad.tolerance * scale || est <= std::numeric_limits<double>::min()) {
            result.values = std::move(fine);
            result.panels = 2 * level * panels;
            return result;
        }
        coarse = std::move(fine);
        level *= 2;
    }
}

void require_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("inverse temperature beta must be positive and finite");
}

}  // namespace

KernelSamples kernel_zero_t(const SpectralDensity& spec, const TimeGrid& grid,
                            const QuadratureConfig& quad) {
    const auto window = resolve_window(spec, quad);
    auto k = oscillatory_quadrature(spec, window, [](double) { return 1.0; }, 0.0, grid, quad);
    k.kind = KernelKind::ZeroT;
    return k;
}

KernelSamples kernel_restricted_thermal(const SpectralDensity& spec, double beta,
                                        const TimeGrid& grid, const QuadratureConfig& quad) {
    require_beta(beta);
    const auto window = resolve_window(spec, quad);
    auto k = oscillatory_quadrature(
        spec, window, [beta](double w) { return std::exp(-beta * w); }, beta, grid, quad);
    k.kind = KernelKind::RestrictedThermal;
    k.beta = beta;
    return k;
}

KernelSamples kernel_full_thermal(const SpectralDensity& spec, double beta, const TimeGrid& grid,
                                  const QuadratureConfig& quad) {
    require_beta(beta);
    const auto window = resolve_window(spec, quad);
    if (window.lo <= 0.0 && spec.coupling > 0.0) {
        // J(0) > 0 and the Bose factor ~ 1/(beta w) make the integral diverge at w -> 0
        throw InfraredDivergence(
            "full thermal kernel needs a strictly positive lower window edge (omega_min)");
    }
    auto k = oscillatory_quadrature(
        spec, window, [beta](double w) { return 1.0 / std::expm1(beta * w); }, beta, grid,
        quad);
    k.kind = KernelKind::FullThermal;
    k.beta = beta;
    return k;
}

KernelSamples kernel_zero_t_full_line(const SpectralDensity& spec, const TimeGrid& grid,
                                      const QuadratureConfig& quad) {
    validate(spec);
    validate(quad);
    // two tails, each g^2 gamma / (2 pi W)
    const double half_width = spec.width / (kPi * quad.tail_tolerance);
    const FrequencyWindow window{spec.center - half_width, spec.center + half_width};
    // integrate over w' = w - lo >= 0 so the half-line evaluator applies
    SpectralDensity shifted = spec;
    shifted.window = {0.0, 2.0 * half_width};
    shifted.center = half_width;
    auto k = oscillatory_quadrature(
        shifted, {0.0, 2.0 * half_width}, [](double) { return 1.0; }, 0.0, grid, quad);
    // undo the shift of the frequency origin: e^{-i w t} = e^{-i (w' + lo) t}
    for (std::size_t n = 0; n < k.values.size(); ++n)
        k.values[n] *= std::polar(1.0, -window.lo * grid.time(n));
    k.kind = KernelKind::ZeroT;
    k.window = window;
    k.tail_bound = 2.0 * lorentz_tail_bound(spec, window.hi);
    return k;
}

cplx full_line_lorentz_kernel(const SpectralDensity& spec, cplx t) {
    const cplx i{0.0, 1.0};
    return spec.coupling * spec.coupling * std::exp(-0.5 * spec.width * t - i * spec.center * t);
}

KernelSamples full_line_lorentz_samples(const SpectralDensity& spec, const TimeGrid& grid) {
    validate(spec);
    validate(grid);
    KernelSamples k;
    k.kind = KernelKind::ZeroT;
    k.dt = grid.dt;
    k.window = {-kInfinity, kInfinity};
    k.values.resize(grid.count);
    for (std::size_t n = 0; n < grid.count; ++n)
        k.values[n] = full_line_lorentz_kernel(spec, cplx{grid.time(n), 0.0});
    return k;
}

double partition_restricted(const Dispersion& disp, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("partition: beta must be positive");
    if (!(disp.slope > 0.0) || !std::isfinite(disp.slope))
        throw DomainError("partition: dispersion slope must be positive");
    // int_R dk ln(1 - e^{-beta c |k|}) = (2 / (beta c)) * (-pi^2 / 6)
    return std::exp(kPi * kPi / (3.0 * beta * disp.slope));
}

void write_kernel_csv(std::ostream& os, const KernelSamples& kernel) {
    os << "t,re,im\n";
    for (std::size_t n = 0; n < kernel.size(); ++n) {
        os << detail::fmt_double(static_cast<double>(n) * kernel.dt) << ','
           << detail::fmt_double(kernel.values[n].real()) << ','
           << detail::fmt_double(kernel.values[n].imag()) << '\n';
    }
}

}  // namespace rwadyn
