#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hicache {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameter or configuration (sigma out of range, interval = 0, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Feature dimension differs from what the cache/trajectory holds.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Non-finite inputs or outputs.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Not enough samples or timesteps for the requested operation.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Malformed trace file. `position()` is a byte offset for binary traces and
/// a 1-based line number for CSV traces.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::uint64_t position)
        : Error(what + " (at " + std::to_string(position) + ")"), position_(position) {}

    std::uint64_t position() const noexcept { return position_; }

private:
    std::uint64_t position_;
};

/// A feature oracle threw while computing timestep `t()`.
class OracleError : public Error {
public:
    OracleError(const std::string& what, std::int64_t t)
        : Error("oracle failed at t=" + std::to_string(t) + ": " + what), t_(t) {}

    std::int64_t t() const noexcept { return t_; }

private:
    std::int64_t t_;
};

/// Sample covariance cannot be whitened.
class SingularCovarianceError : public Error {
public:
    SingularCovarianceError(const std::string& what, double condition)
        : Error(what + " (condition estimate " + std::to_string(condition) + ")"),
          condition_(condition) {}

    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

}  // namespace hicache
