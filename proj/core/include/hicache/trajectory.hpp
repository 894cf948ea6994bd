#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hicache/feature.hpp"

namespace hicache {

/// Time-indexed sequence of features with strictly descending timesteps and a
/// fixed dimension.
class Trajectory {
public:
    Trajectory() = default;
    explicit Trajectory(std::size_t dim);

    /// Appends a step. Throws DimensionError, NumericError on non-finite
    /// entries, or ConfigError when t does not descend.
    void append(std::int64_t t, FeatureVector feature);

    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }
    std::size_t dim() const noexcept { return dim_; }

    std::int64_t time(std::size_t i) const { return times_.at(i); }
    const FeatureVector& feature(std::size_t i) const { return features_.at(i); }

    /// Position of timestep t, if present.
    std::optional<std::size_t> index_of(std::int64_t t) const noexcept;

    /// Feature at timestep t; throws InsufficientDataError when absent.
    const FeatureVector& at(std::int64_t t) const;

    bool contains(std::int64_t t) const noexcept { return index_of(t).has_value(); }

    /// True when the timesteps are exactly size(), size()-1, ..., 1.
    bool has_canonical_times() const noexcept;

    friend bool operator==(const Trajectory& a, const Trajectory& b);

private:
    std::size_t dim_ = 0;
    std::vector<std::int64_t> times_;
    std::vector<FeatureVector> features_;
};

}  // namespace hicache
