#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "hicache/trajectory.hpp"

namespace hicache {

/// Zero-mean GP with kernel amplitude^2 * exp(-(s - t)^2 / (2 length_scale^2)).
struct GpSquaredExponential {
    double length_scale = 8.0;
    double amplitude = 1.0;
};

/// dX = -theta X dt + noise dW with unit time steps, sampled exactly.
/// Without `x0` the start is drawn from the stationary law (or 1.0 when
/// noise = 0).
struct OrnsteinUhlenbeck {
    double theta = 0.5;
    double noise = 1.0;
    std::optional<double> x0;
};

/// Random polynomial in u = t / T plus white noise. Coefficients are
/// coeff_scale * N(0, 1).
struct PolyPlusNoise {
    int degree = 1;
    double coeff_scale = 1.0;
    double noise = 0.0;
};

using GeneratorKind = std::variant<GpSquaredExponential, OrnsteinUhlenbeck, PolyPlusNoise>;

struct GeneratorSpec {
    GeneratorKind kind = GpSquaredExponential{};
    std::size_t dim = 1;
    std::int64_t total_steps = 50;
    std::uint64_t seed = 0;

    /// Throws ConfigError on invalid parameters.
    void validate() const;
};

/// Largest T accepted by the dense-kernel GP path.
inline constexpr std::int64_t kMaxDenseKernelSteps = 4096;

std::string_view kind_name(const GeneratorKind& kind) noexcept;

/// Deterministic trajectory with timesteps T..1. Each dimension draws from
/// its own RNG substream. Throws ConfigError for invalid specs or
/// NumericError when the GP kernel stays indefinite after jitter escalation.
Trajectory generate(const GeneratorSpec& spec);

}  // namespace hicache
