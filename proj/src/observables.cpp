#include "rwadyn/observables.hpp"

#include <cmath>
#include <sstream>

namespace rwadyn {

void validate(const FriedrichsInitial& init) {
    if (!(init.p >= 0.0 && init.p <= 1.0)) throw DomainError("friedrichs initial: p must lie in [0, 1]");
    if (!(init.z >= 1.0) || !std::isfinite(init.z))
        throw DomainError("friedrichs initial: Z must be >= 1");
    if (!(init.beta > 0.0)) throw DomainError("friedrichs initial: beta must be positive");
}

void validate(const OscillatorInitial& init) {
    if (!(init.number >= 0.0) || !std::isfinite(init.number))
        throw DomainError("oscillator initial: <a^dagger a> must be >= 0");
    const double coherent = std::norm(init.mean_a);
    if (coherent > init.number * (1.0 + 1e-12) + 1e-300)
        throw DomainError("oscillator initial: |<a>|^2 exceeds <a^dagger a>");
}

namespace {

void check_aligned(const Trajectory& x, const KernelSamples& kernel) {
    if (!same_step(x.dt, kernel.dt)) {
        std::ostringstream os;
        os << "grid mismatch: trajectory step " << x.dt << ", kernel step " << kernel.dt;
        throw DimensionError(os.str());
    }
    if (kernel.size() < x.size()) {
        std::ostringstream os;
        os << "grid mismatch: kernel holds " << kernel.size() << " samples, trajectory "
           << x.size();
        throw DimensionError(os.str());
    }
}

void check_kind(const KernelSamples& kernel, KernelKind expected) {
    if (kernel.kind != expected) {
        std::ostringstream os;
        os << "expected a " << to_string(expected) << " kernel, got " << to_string(kernel.kind);
        throw KindMismatch(os.str());
    }
}

}  // namespace

std::vector<double> thermal_injection(const Trajectory& x, const KernelSamples& kernel) {
    check_aligned(x, kernel);
    const std::size_t count = x.size();
    const double dt = x.dt;
    std::vector<double> f(count, 0.0);
    if (count == 0) return f;

    // h(tau) = 2 Re[x*(tau) u(tau)],  u(tau) = int_0^tau K(tau - s) x(s) ds
    double h_prev = 0.0;
    for (std::size_t n = 1; n < count; ++n) {
        cplx u = 0.5 * (kernel[n] * x[0] + kernel[0] * x[n]);
        for (std::size_t j = 1; j < n; ++j) u += kernel[n - j] * x[j];
        u *= dt;
        const double h = 2.0 * (std::conj(x[n]) * u).real();
        f[n] = f[n - 1] + 0.5 * dt * (h_prev + h);
        h_prev = h;
    }
    return f;
}

ObservableSeries excited_population(const Trajectory& x, const KernelSamples& restricted_kernel,
                                    const FriedrichsInitial& init) {
    validate(init);
    check_kind(restricted_kernel, KernelKind::RestrictedThermal);
    if (std::abs(restricted_kernel.beta - init.beta) > 1e-12 * init.beta)
        throw DomainError("excited population: kernel beta differs from the initial-state beta");
    const auto f = thermal_injection(x, restricted_kernel);

    ObservableSeries out;
    out.dt = x.dt;
    out.population.resize(x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        out.population[n] = (init.p * std::norm(x[n]) + (1.0 - init.p) * f[n]) / init.z;
    return out;
}

ObservableSeries oscillator_moments(const Trajectory& x, const KernelSamples& full_kernel,
                                    const OscillatorInitial& init) {
    validate(init);
    check_kind(full_kernel, KernelKind::FullThermal);
    const auto f = thermal_injection(x, full_kernel);

    ObservableSeries out;
    out.dt = x.dt;
    out.population.resize(x.size());
    std::vector<cplx> a(x.size()), aa(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        out.population[n] = std::norm(x[n]) * init.number + f[n];
        a[n] = x[n] * init.mean_a;
        aa[n] = x[n] * x[n] * init.mean_aa;
    }
    out.mean_a = std::move(a);
    out.mean_aa = std::move(aa);
    return out;
}

Trajectory one_photon_amplitude(const Trajectory& x, cplx coupling, double frequency) {
    if (!(x.dt > 0.0)) throw DimensionError("one-photon amplitude: trajectory has no time step");
    const std::size_t count = x.size();
    std::vector<cplx> phase(count);
    for (std::size_t j = 0; j < count; ++j)
        phase[j] = std::polar(1.0, -frequency * x.dt * static_cast<double>(j));

    Trajectory out;
    out.dt = x.dt;
    out.values.assign(count, cplx{});
    const cplx prefactor = cplx{0.0, -1.0} * coupling * x.dt;
    for (std::size_t n = 1; n < count; ++n) {
        cplx acc = 0.5 * (x[n] * phase[0] + x[0] * phase[n]);
        for (std::size_t j = 1; j < n; ++j) acc += x[n - j] * phase[j];
        out.values[n] = prefactor * acc;
    }
    return out;
}

}  // namespace rwadyn
