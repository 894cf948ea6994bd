#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "hicache/error.hpp"
#include "hicache/scheduler.hpp"
#include "hicache/sim.hpp"
#include "oracles.hpp"

namespace hicache {
namespace {

Trajectory small_gp(std::int64_t steps, std::size_t dim = 3) {
    GeneratorSpec spec;
    spec.dim = dim;
    spec.total_steps = steps;
    spec.seed = 5;
    return generate(spec);
}

std::set<std::int64_t> full_steps(const ScheduleTrace& trace) {
    std::set<std::int64_t> out;
    for (const StepRecord& r : trace.steps) {
        if (r.mode == StepMode::Full) out.insert(r.t);
    }
    return out;
}

TEST(Schedule, ForcedFirstStepThenMultiples) {
    const Trajectory truth = small_gp(10);
    ScheduleConfig cfg{10, 3, BasisConfig::hermite(2, 0.5)};
    const ScheduleTrace trace = run_schedule(cfg, trajectory_oracle(truth), &truth);
    EXPECT_EQ(full_steps(trace), (std::set<std::int64_t>{10, 9, 6, 3}));
    EXPECT_EQ(trace.oracle_calls, 4u);
    ASSERT_EQ(trace.steps.size(), 10u);
    EXPECT_EQ(trace.steps.front().t, 10);
    EXPECT_EQ(trace.steps.back().t, 1);
}

TEST(Schedule, HorizonIsGapFromLastActivation) {
    const Trajectory truth = small_gp(10);
    const ScheduleTrace trace = run_schedule({10, 3, BasisConfig::taylor(1)}, trajectory_oracle(truth));
    // t = 10 (full), 9 (full), 8, 7, 6 (full), 5, 4, 3 (full), 2, 1
    const int expected[] = {0, 0, 1, 2, 0, 1, 2, 0, 1, 2};
    for (std::size_t i = 0; i < trace.steps.size(); ++i) EXPECT_EQ(trace.steps[i].horizon, expected[i]);
}

TEST(Schedule, OracleCallsMatchEnumeration) {
    for (auto [steps, interval] : {std::pair<std::int64_t, int>{10, 3}, {50, 7}, {50, 9}, {100, 6}, {37, 1}, {5, 8}}) {
        const Trajectory truth = small_gp(steps, 2);
        const ScheduleTrace trace =
            run_schedule({steps, interval, BasisConfig::taylor(2)}, trajectory_oracle(truth));
        EXPECT_EQ(trace.oracle_calls, oracle::activation_count(steps, interval))
            << "T=" << steps << " N=" << interval;
        const double skipped = 1.0 - static_cast<double>(trace.oracle_calls) / static_cast<double>(steps);
        if (interval > 1 && steps >= interval) {
            EXPECT_LE(std::abs(skipped - (interval - 1.0) / interval), 1.0 / static_cast<double>(steps));
        }
    }
    EXPECT_EQ(oracle::activation_count(50, 7), 8u);
}

TEST(Schedule, IntervalOneComputesEveryStep) {
    const Trajectory truth = small_gp(12);
    const ScheduleTrace trace = run_schedule({12, 1, BasisConfig::hermite(3, 0.5)}, trajectory_oracle(truth), &truth);
    EXPECT_EQ(trace.oracle_calls, 12u);
    for (const StepRecord& r : trace.steps) {
        EXPECT_EQ(r.mode, StepMode::Full);
        EXPECT_EQ(*r.error, 0.0);
    }
}

TEST(Schedule, FullStepsHaveZeroErrorAndPredictionsRecordOrder) {
    const Trajectory truth = small_gp(50, 4);
    const ScheduleTrace trace = run_schedule({50, 7, BasisConfig::hermite(2, 0.5)}, trajectory_oracle(truth), &truth);
    int max_order_seen = 0;
    for (const StepRecord& r : trace.steps) {
        ASSERT_TRUE(r.error.has_value());
        if (r.mode == StepMode::Full) {
            EXPECT_EQ(*r.error, 0.0);
            EXPECT_EQ(r.order_used, 0);
        } else {
            EXPECT_GE(r.horizon, 1);
            EXPECT_LE(r.horizon, 6);
            max_order_seen = std::max(max_order_seen, r.order_used);
        }
    }
    EXPECT_EQ(max_order_seen, 2);
    // The first activation window can only reuse.
    EXPECT_EQ(trace.steps[1].order_used, 0);
}

TEST(Schedule, Deterministic) {
    const Trajectory truth = small_gp(30);
    const ScheduleConfig cfg{30, 4, BasisConfig::hermite(3, 0.5)};
    const ScheduleTrace a = run_schedule(cfg, trajectory_oracle(truth), &truth);
    const ScheduleTrace b = run_schedule(cfg, trajectory_oracle(truth), &truth);
    ASSERT_EQ(a.steps.size(), b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        EXPECT_EQ(a.steps[i].feature, b.steps[i].feature);
        EXPECT_EQ(*a.steps[i].error, *b.steps[i].error);
    }
}

TEST(Schedule, AffineTrajectoryIsExactAfterWarmUp) {
    std::mt19937_64 gen(2);
    const Trajectory truth =
        testing::affine_trajectory(testing::random_vector(gen, 4), testing::random_vector(gen, 4), 40);
    const ScheduleTrace trace = run_schedule({40, 5, BasisConfig::taylor(2)}, trajectory_oracle(truth), &truth);
    for (const StepRecord& r : trace.steps) {
        if (r.order_used >= 1) EXPECT_LE(*r.error, 1e-9);
    }
}

TEST(Schedule, OracleFailuresAreWrapped) {
    FeatureOracle failing = [](std::int64_t t) -> FeatureVector {
        if (t == 6) throw std::runtime_error("model exploded");
        return testing::vec({1.0});
    };
    try {
        run_schedule({10, 3, BasisConfig::taylor(1)}, failing);
        FAIL() << "expected OracleError";
    } catch (const OracleError& e) {
        EXPECT_EQ(e.t(), 6);
    }

    FeatureOracle drifting = [](std::int64_t t) -> FeatureVector {
        return t > 8 ? testing::vec({1.0}) : testing::vec({1.0, 2.0});
    };
    EXPECT_THROW(run_schedule({10, 3, BasisConfig::taylor(1)}, drifting), DimensionError);
}

TEST(Schedule, ConfigErrors) {
    const Trajectory truth = small_gp(10);
    EXPECT_THROW(run_schedule({0, 3, BasisConfig::taylor(1)}, trajectory_oracle(truth)), ConfigError);
    EXPECT_THROW(run_schedule({10, 0, BasisConfig::taylor(1)}, trajectory_oracle(truth)), ConfigError);
    EXPECT_THROW(run_schedule({12, 3, BasisConfig::taylor(1)}, trajectory_oracle(truth), &truth),
                 InsufficientDataError);
}

TEST(HorizonOf, GapFromLastActivation) {
    for (int k = 1; k < 6; ++k) EXPECT_EQ(horizon_of(10 - k, 10), k);
    EXPECT_EQ(horizon_of(7, 9), 2);
    EXPECT_THROW(horizon_of(4, 4), ConfigError);
}

}  // namespace
}  // namespace hicache
