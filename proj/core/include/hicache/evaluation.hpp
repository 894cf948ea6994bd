#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hicache/basis.hpp"
#include "hicache/feature.hpp"
#include "hicache/trajectory.hpp"

namespace hicache {

struct DifferenceSamples {
    /// Order-k backward differences, one per anchor, in descending anchor order.
    std::vector<FeatureVector> vectors;
    std::vector<std::int64_t> anchors;
    /// Every vector is zero up to rounding relative to the feature scale.
    bool degenerate = false;
};

/// Order-k backward differences with step `interval` at every activation
/// anchor (t divisible by interval) whose k predecessors t + interval, ...,
/// t + k*interval are also in the trajectory:
///
///   sum_{j=0..k} (-1)^j C(k, j) F(t + j*interval) / (-interval)^k
///
/// Throws InsufficientDataError when no anchor qualifies.
DifferenceSamples difference_samples(const Trajectory& trajectory, int interval, int order);

/// Squared-error statistics for one basis over all anchors.
struct BasisErrors {
    BasisConfig config;
    /// mse[h - 1]: mean squared error per feature entry at horizon h.
    std::vector<double> mse;
    /// cumulative_mse[h - 1] = mse[0] + ... + mse[h - 1].
    std::vector<double> cumulative_mse;
};

/// reference MSE / candidate MSE; empty when the candidate MSE is zero.
std::optional<double> error_ratio(double reference_mse, double candidate_mse) noexcept;

struct RatioSeries {
    std::vector<std::optional<double>> per_horizon;
    std::vector<std::optional<double>> cumulative;
};

struct ErrorReport {
    int interval = 0;
    std::size_t dim = 0;
    std::vector<std::int64_t> anchors;
    /// bases[0] is the reference (normally the Taylor predictor).
    std::vector<BasisErrors> bases;
    /// ratios[j] compares bases[0] against bases[j + 1].
    std::vector<RatioSeries> ratios;
};

/// Non-cumulative evaluation: every anchor starts from ground-truth history,
/// so errors never compound across anchors.
///
/// Anchors are the activation steps that have full warm-up for the largest
/// order in `configs` and ground truth at every horizon 1..interval-1. At each
/// anchor a cache is filled from ground truth alone and every config predicts
/// each horizon.
///
/// Throws ConfigError for interval < 2 or an empty config list and
/// InsufficientDataError when no anchor qualifies.
ErrorReport non_cumulative_eval(const Trajectory& truth, int interval, std::span<const BasisConfig> configs);

}  // namespace hicache
