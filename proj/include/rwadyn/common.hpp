// common.hpp: shared value types and the error hierarchy of the rwadyn core

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rwadyn {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class ErrorCode {
    Domain,
    Dimension,
    QuadratureFailure,
    InfraredDivergence,
    KindMismatch,
    Stability,
    Config,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorCode::Domain, w) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& w) : Error(ErrorCode::Dimension, w) {}
};

/// Raised when the panel budget is exhausted before the requested accuracy.
/// Carries the best error estimate that was reached.
struct QuadratureFailure : Error {
    QuadratureFailure(const std::string& w, double achieved)
        : Error(ErrorCode::QuadratureFailure, w), achieved_error(achieved) {}
    double achieved_error;
};

struct InfraredDivergence : Error {
    explicit InfraredDivergence(const std::string& w) : Error(ErrorCode::InfraredDivergence, w) {}
};

struct KindMismatch : Error {
    explicit KindMismatch(const std::string& w) : Error(ErrorCode::KindMismatch, w) {}
};

struct StabilityError : Error {
    explicit StabilityError(const std::string& w) : Error(ErrorCode::Stability, w) {}
};

struct ConfigError : Error {
    ConfigError(const std::string& w, std::size_t line_no)
        : Error(ErrorCode::Config, line_no ? "line " + std::to_string(line_no) + ": " + w : w),
          line(line_no) {}
    std::size_t line;  // 0 when not tied to a line
};

struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorCode::Io, w) {}
};

// Uniform time grid t_n = n * dt, n = 0 .. count-1.
struct TimeGrid {
    double dt{1e-3};
    std::size_t count{1};

    double time(std::size_t n) const { return static_cast<double>(n) * dt; }
    double t_max() const { return count ? time(count - 1) : 0.0; }
};

void validate(const TimeGrid& grid);

// Relative comparison used to decide whether two grids share a step.
bool same_step(double dt_a, double dt_b);

}  // namespace rwadyn
