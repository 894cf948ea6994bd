#include "hicache/scheduler.hpp"

#include <string>

#include "hicache/cache.hpp"
#include "hicache/error.hpp"
#include "hicache/predictor.hpp"

namespace hicache {

std::string_view to_string(StepMode mode) noexcept {
    return mode == StepMode::Full ? "full" : "predicted";
}

int horizon_of(std::int64_t t, std::int64_t t_last) {
    if (t == t_last) throw ConfigError("horizon undefined at the activation step t=" + std::to_string(t));
    const std::int64_t gap = t_last > t ? t_last - t : t - t_last;
    return static_cast<int>(gap);
}

ScheduleTrace run_schedule(const ScheduleConfig& config, const FeatureOracle& oracle,
                           const Trajectory* truth) {
    if (config.total_steps < 1) throw ConfigError("total_steps must be >= 1");
    if (config.interval < 1) throw ConfigError("interval must be >= 1");
    config.basis.validate();
    if (truth != nullptr) {
        for (std::int64_t t = config.total_steps; t >= 1; --t) {
            if (!truth->contains(t)) {
                throw InsufficientDataError("ground truth is missing t=" + std::to_string(t));
            }
        }
    }

    DerivativeCache cache(config.interval, config.basis.max_order);
    ScheduleTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(config.total_steps));

    for (std::int64_t t = config.total_steps; t >= 1; --t) {
        StepRecord rec;
        rec.t = t;
        if (cache.empty() || t % config.interval == 0) {
            FeatureVector f;
            try {
                f = oracle(t);
            } catch (const OracleError&) {
                throw;
            } catch (const std::exception& e) {
                throw OracleError(e.what(), t);
            }
            ++trace.oracle_calls;
            if (!cache.empty() && static_cast<std::size_t>(f.size()) != cache.dim()) {
                throw DimensionError("oracle dimension changed to " + std::to_string(f.size()) +
                                     " at t=" + std::to_string(t));
            }
            cache.update(f, t);
            rec.mode = StepMode::Full;
            rec.feature = std::move(f);
        } else {
            const int k = horizon_of(t, cache.t_last());
            rec.mode = StepMode::Predicted;
            rec.horizon = k;
            Prediction p = predict(cache, config.basis, k);
            rec.order_used = p.order_used;
            rec.feature = std::move(p.feature);
        }
        if (truth != nullptr) {
            const FeatureVector& ref = truth->at(t);
            if (ref.size() != rec.feature.size()) {
                throw DimensionError("ground truth dimension differs at t=" + std::to_string(t));
            }
            rec.error = (rec.feature - ref).norm();
        }
        trace.steps.push_back(std::move(rec));
    }
    return trace;
}

FeatureOracle trajectory_oracle(const Trajectory& trajectory, std::uint64_t busy_work) {
    return [&trajectory, busy_work](std::int64_t t) -> FeatureVector {
        if (busy_work > 0) {
            volatile double sink = 0.0;
            for (std::uint64_t i = 0; i < busy_work; ++i) sink = sink + 1e-9 * static_cast<double>(i);
        }
        return trajectory.at(t);
    };
}

}  // namespace hicache
