#include "hicache/cache.hpp"

#include <algorithm>
#include <string>

#include "hicache/error.hpp"

namespace hicache {

DerivativeCache::DerivativeCache(int interval, int max_order)
    : interval_(interval), max_order_(max_order) {
    if (interval < 1) {
        throw ConfigError("cache interval must be >= 1, got " + std::to_string(interval));
    }
    if (max_order < 0) {
        throw ConfigError("cache max_order must be >= 0, got " + std::to_string(max_order));
    }
}

void DerivativeCache::update(const FeatureVector& feature, std::int64_t t) {
    if (feature.size() == 0) throw DimensionError("feature vector is empty");
    if (!all_finite(feature)) {
        throw NumericError("non-finite feature entry at t=" + std::to_string(t));
    }
    if (empty()) {
        diffs_.assign(1, feature);
        t_last_ = t;
        activations_seen_ = 1;
        return;
    }
    if (static_cast<std::size_t>(feature.size()) != dim()) {
        throw DimensionError("feature dimension " + std::to_string(feature.size()) +
                             " does not match cache dimension " + std::to_string(dim()));
    }
    if (t == t_last_) {
        throw ConfigError("activation gap is zero at t=" + std::to_string(t));
    }
    if (t > t_last_) {
        throw ConfigError("activation timesteps must descend: t=" + std::to_string(t) +
                          " after t_last=" + std::to_string(t_last_));
    }

    // Signed step (negative while timesteps descend), so diffs[i] approximates
    // the i-th derivative in t and the predictor's step -k lands on t_last - k.
    const double gap = static_cast<double>(t - t_last_);
    const std::size_t depth = std::min(diffs_.size() + 1, static_cast<std::size_t>(max_order_) + 1);

    std::vector<FeatureVector> next;
    next.reserve(depth);
    next.push_back(feature);
    for (std::size_t k = 0; k + 1 < depth; ++k) {
        next.push_back((next[k] - diffs_[k]) / gap);
    }

    diffs_ = std::move(next);
    t_last_ = t;
    ++activations_seen_;
}

DerivativeCache DerivativeCache::updated(const FeatureVector& feature, std::int64_t t) const {
    DerivativeCache out = *this;
    out.update(feature, t);
    return out;
}

DerivativeCache cache_init(int interval, int max_order) { return DerivativeCache(interval, max_order); }

DerivativeCache cache_update(const DerivativeCache& cache, const FeatureVector& feature, std::int64_t t) {
    return cache.updated(feature, t);
}

}  // namespace hicache
