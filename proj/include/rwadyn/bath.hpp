// bath.hpp: spectral density, memory kernels and the restricted partition constant

#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "rwadyn/common.hpp"

namespace rwadyn {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Frequency support of J. hi = +inf means "choose from the tail tolerance".
struct FrequencyWindow {
    double lo{0.0};
    double hi{kInfinity};

    double width() const { return hi - lo; }
};

// Lorentz spectral density
//   J(w) = width * coupling^2 / ((width/2)^2 + (w - center)^2)   for w in window,
// zero outside.
struct SpectralDensity {
    double coupling{1.0};
    double width{1.0};
    double center{5.0};
    FrequencyWindow window{};

    static SpectralDensity lorentz(double coupling, double width, double center,
                                   FrequencyWindow window = {});

    double peak() const { return 4.0 * coupling * coupling / width; }
};

void validate(const SpectralDensity& spec);

double eval_spectral_density(const SpectralDensity& spec, double omega);

// Linear dispersion w_k = slope * |k|.
struct Dispersion {
    double slope{100.0};
};

enum class KernelKind { ZeroT, RestrictedThermal, FullThermal };

const char* to_string(KernelKind kind);

struct QuadratureConfig {
    int points_per_period{4};  // panels per oscillation period 2*pi/t_max
    int nodes_per_panel{8};    // Gauss-Legendre order on each panel
    double tolerance{1e-8};    // relative to kernel(0)
    double tail_tolerance{1e-3};
    std::size_t max_panels{std::size_t{1} << 18};
};

void validate(const QuadratureConfig& quad);

// A memory kernel sampled on t_n = n * dt.
struct KernelSamples {
    KernelKind kind{KernelKind::ZeroT};
    double beta{0.0};  // 0 for ZeroT
    double dt{0.0};
    std::vector<cplx> values;

    // Quadrature bookkeeping, reported in run manifests.
    double error_estimate{0.0};  // max_n |I_2P(t_n) - I_P(t_n)|
    double tail_bound{0.0};      // analytic bound on the truncated Lorentz mass
    std::size_t panels{0};
    FrequencyWindow window{};

    std::size_t size() const { return values.size(); }
    const cplx& operator[](std::size_t n) const { return values[n]; }
};

// Analytic bound g^2 * gamma / (2 pi (hi - center)) on the mass dropped above hi.
double lorentz_tail_bound(const SpectralDensity& spec, double hi);

// Finite window actually integrated over. An infinite upper edge becomes
// center + K*width with K from the tail tolerance; a finite one must meet it.
FrequencyWindow resolve_window(const SpectralDensity& spec, const QuadratureConfig& quad);

// G(t) = int_window dw/(2 pi) e^{-i w t} J(w)
KernelSamples kernel_zero_t(const SpectralDensity& spec, const TimeGrid& grid,
                            const QuadratureConfig& quad);

// G_beta^1(t): as G with the extra weight e^{-beta w}.
KernelSamples kernel_restricted_thermal(const SpectralDensity& spec, double beta,
                                        const TimeGrid& grid, const QuadratureConfig& quad);

// G_beta^inf(t): as G with the Bose weight 1/(e^{beta w} - 1). Requires window.lo > 0.
KernelSamples kernel_full_thermal(const SpectralDensity& spec, double beta, const TimeGrid& grid,
                                  const QuadratureConfig& quad);

// Comparison mode: the Lorentzian integrated over the whole real line (truncated
// symmetrically around the center from the tail tolerance). Ignores spec.window.
KernelSamples kernel_zero_t_full_line(const SpectralDensity& spec, const TimeGrid& grid,
                                      const QuadratureConfig& quad);

// Closed form of the full-line kernel, g^2 e^{-gamma t/2} e^{-i center t}, continued to
// complex t.
cplx full_line_lorentz_kernel(const SpectralDensity& spec, cplx t);

// Full-line closed form sampled on a grid, tagged ZeroT.
KernelSamples full_line_lorentz_samples(const SpectralDensity& spec, const TimeGrid& grid);

// Z = exp(-int dk ln(1 - e^{-beta w_k})) = exp(pi^2 / (3 beta c)) for w_k = c|k|.
double partition_restricted(const Dispersion& disp, double beta);

// Debug dump: header "t,re,im", one row per sample.
void write_kernel_csv(std::ostream& os, const KernelSamples& kernel);

}  // namespace rwadyn
