#include "hicache/trajectory.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "hicache/error.hpp"

namespace hicache {

Trajectory::Trajectory(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw DimensionError("trajectory dimension must be positive");
}

void Trajectory::append(std::int64_t t, FeatureVector feature) {
    if (dim_ == 0) {
        if (feature.size() == 0) throw DimensionError("trajectory dimension must be positive");
        dim_ = static_cast<std::size_t>(feature.size());
    }
    if (static_cast<std::size_t>(feature.size()) != dim_) {
        throw DimensionError("step t=" + std::to_string(t) + " has dimension " +
                             std::to_string(feature.size()) + ", expected " + std::to_string(dim_));
    }
    if (!all_finite(feature)) throw NumericError("non-finite feature at t=" + std::to_string(t));
    if (!times_.empty() && t >= times_.back()) {
        throw ConfigError("trajectory timesteps must strictly descend: t=" + std::to_string(t) +
                          " after " + std::to_string(times_.back()));
    }
    times_.push_back(t);
    features_.push_back(std::move(feature));
}

std::optional<std::size_t> Trajectory::index_of(std::int64_t t) const noexcept {
    const auto it = std::lower_bound(times_.begin(), times_.end(), t, std::greater<>{});
    if (it == times_.end() || *it != t) return std::nullopt;
    return static_cast<std::size_t>(it - times_.begin());
}

const FeatureVector& Trajectory::at(std::int64_t t) const {
    const auto idx = index_of(t);
    if (!idx) throw InsufficientDataError("trajectory has no step t=" + std::to_string(t));
    return features_[*idx];
}

bool Trajectory::has_canonical_times() const noexcept {
    const auto n = static_cast<std::int64_t>(times_.size());
    for (std::int64_t i = 0; i < n; ++i) {
        if (times_[static_cast<std::size_t>(i)] != n - i) return false;
    }
    return true;
}

bool operator==(const Trajectory& a, const Trajectory& b) {
    if (a.dim_ != b.dim_ || a.times_ != b.times_) return false;
    for (std::size_t i = 0; i < a.features_.size(); ++i) {
        if (a.features_[i] != b.features_[i]) return false;
    }
    return true;
}

}  // namespace hicache
