#pragma once

#include <Eigen/Core>

namespace hicache {

/// One D-dimensional feature activation.
using FeatureVector = Eigen::VectorXd;

inline bool all_finite(const FeatureVector& v) { return v.allFinite(); }

}  // namespace hicache
