#include "hicache/predictor.hpp"

#include <algorithm>
#include <string>

#include "hicache/error.hpp"

namespace hicache {

Prediction predict(const DerivativeCache& cache, const BasisConfig& config, int k,
                   PredictOptions options) {
    config.validate();
    if (cache.empty()) throw InsufficientDataError("cannot predict from an empty cache");
    if (k < 0) throw ConfigError("prediction horizon must be non-negative, got " + std::to_string(k));
    if (!options.allow_any_horizon && (k < 1 || k > cache.interval() - 1)) {
        throw ConfigError("prediction horizon " + std::to_string(k) + " outside [1, " +
                          std::to_string(cache.interval() - 1) + "]");
    }

    const auto diffs = cache.diffs();
    const int order = std::min(config.max_order, cache.available_order());
    const double step = -static_cast<double>(k);

    FeatureVector out = diffs[0];
    double factorial = 1.0;
    for (int i = 1; i <= order; ++i) {
        factorial *= i;
        // One basis evaluation per order, shared by every feature dimension.
        const double coeff = basis_value(config, i, step) / factorial;
        out += coeff * diffs[static_cast<std::size_t>(i)];
        if (!all_finite(out)) {
            throw NumericError("prediction overflowed at order " + std::to_string(i) +
                               " (horizon " + std::to_string(k) + ")");
        }
    }
    return Prediction{std::move(out), k, order};
}

}  // namespace hicache
