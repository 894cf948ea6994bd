#pragma once

#include "hicache/basis.hpp"
#include "hicache/cache.hpp"
#include "hicache/feature.hpp"

namespace hicache {

struct Prediction {
    FeatureVector feature;
    int horizon = 0;
    int order_used = 0;
};

struct PredictOptions {
    /// Permit k = 0 and k >= interval. Only meant for diagnostics: the Hermite
    /// expansion is not the identity at k = 0.
    bool allow_any_horizon = false;
};

/// Extrapolates the feature k steps past the cache anchor:
///
///   F_hat = diffs[0] + sum_{i=1..m} diffs[i] / i! * basis_value(config, i, -k)
///
/// with m = min(config.max_order, cache.available_order()). m = 0 is plain
/// reuse of the cached feature.
///
/// Throws InsufficientDataError on an empty cache, ConfigError on a horizon
/// outside [1, interval - 1] (unless allowed) and NumericError naming the
/// first order at which the sum stops being finite.
Prediction predict(const DerivativeCache& cache, const BasisConfig& config, int k,
                   PredictOptions options = {});

}  // namespace hicache
