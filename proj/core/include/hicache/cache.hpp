#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hicache/feature.hpp"

namespace hicache {

/// Order-indexed backward finite differences anchored at the most recent
/// activation step.
///
/// `diffs()[i]` approximates the i-th derivative at `t_last()`: entry 0 is the
/// raw feature and entry i+1 is (new[i] - old[i]) / (t - t_last), the signed
/// step between the last two activations (negative, since timesteps descend). The depth grows by one per
/// activation until it reaches `max_order() + 1`; until then predictors must
/// truncate their expansion to `available_order()`.
///
/// Activation timesteps must strictly descend.
class DerivativeCache {
public:
    /// Throws ConfigError for interval < 1 or max_order < 0.
    DerivativeCache(int interval, int max_order);

    /// Folds a freshly computed feature at timestep `t` into the cache.
    ///
    /// Throws DimensionError on a dimension change, NumericError on non-finite
    /// entries and ConfigError when t does not precede the last activation.
    /// The cache is left untouched if anything throws.
    void update(const FeatureVector& feature, std::int64_t t);

    /// Functional form of update().
    [[nodiscard]] DerivativeCache updated(const FeatureVector& feature, std::int64_t t) const;

    std::span<const FeatureVector> diffs() const noexcept { return diffs_; }

    bool empty() const noexcept { return diffs_.empty(); }

    /// Highest derivative order currently held; -1 when empty.
    int available_order() const noexcept { return static_cast<int>(diffs_.size()) - 1; }

    std::int64_t t_last() const noexcept { return t_last_; }
    int interval() const noexcept { return interval_; }
    int max_order() const noexcept { return max_order_; }
    std::size_t activations_seen() const noexcept { return activations_seen_; }

    /// Feature dimension, 0 before the first activation.
    std::size_t dim() const noexcept { return empty() ? 0 : static_cast<std::size_t>(diffs_[0].size()); }

private:
    std::vector<FeatureVector> diffs_;
    std::int64_t t_last_ = 0;
    int interval_;
    int max_order_;
    std::size_t activations_seen_ = 0;
};

DerivativeCache cache_init(int interval, int max_order);

DerivativeCache cache_update(const DerivativeCache& cache, const FeatureVector& feature, std::int64_t t);

}  // namespace hicache
