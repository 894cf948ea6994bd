#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "hicache/basis.hpp"
#include "hicache/feature.hpp"
#include "hicache/trajectory.hpp"

namespace hicache {

enum class StepMode { Full, Predicted };

std::string_view to_string(StepMode mode) noexcept;

/// Timesteps run from total_steps down to 1.
struct ScheduleConfig {
    std::int64_t total_steps = 50;
    int interval = 1;
    BasisConfig basis;
};

struct StepRecord {
    std::int64_t t = 0;
    StepMode mode = StepMode::Full;
    FeatureVector feature;
    /// Steps since the last activation; 0 for full computes.
    int horizon = 0;
    /// Expansion order the prediction used; below the configured order while
    /// the cache warms up. 0 for full computes.
    int order_used = 0;
    /// L2 distance to the ground truth, when one was supplied.
    std::optional<double> error;
};

struct ScheduleTrace {
    std::vector<StepRecord> steps;
    std::size_t oracle_calls = 0;
};

/// Produces the fully computed feature for timestep t.
using FeatureOracle = std::function<FeatureVector(std::int64_t t)>;

/// Positive number of steps between the last activation and t. Throws
/// ConfigError when t == t_last.
int horizon_of(std::int64_t t, std::int64_t t_last);

/// Runs the cache-then-forecast loop for t = T..1.
///
/// A step is computed by the oracle when t is a multiple of the interval or
/// when the cache is still empty (so the first step is always computed);
/// every other step is predicted from the cache with horizon equal to the gap
/// from the last activation. Predictions are never fed back to the oracle.
///
/// When `truth` is given it must contain every t in [1, T]; each record then
/// carries its L2 error. Oracle exceptions are rethrown as OracleError.
ScheduleTrace run_schedule(const ScheduleConfig& config, const FeatureOracle& oracle,
                           const Trajectory* truth = nullptr);

/// Oracle that looks features up in a trajectory. `busy_work` adds that many
/// iterations of throwaway arithmetic per call to stand in for model cost.
FeatureOracle trajectory_oracle(const Trajectory& trajectory, std::uint64_t busy_work = 0);

}  // namespace hicache
