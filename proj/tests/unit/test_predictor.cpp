#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "builders.hpp"
#include "hicache/error.hpp"
#include "hicache/predictor.hpp"

namespace hicache {
namespace {

using testing::vec;

constexpr double kInvSqrt2 = 0.70710678118654752440;

// diffs = {[3,5], [1,2]} at t_last = 3 with interval 3.
DerivativeCache first_order_cache() { return testing::make_cache(3, 1, {{6, vec({6, 11})}, {3, vec({3, 5})}}); }

// diffs = {[3,5], [1,2], [0.4,-0.2]} at t_last = 3 with interval 3.
DerivativeCache second_order_cache() {
    return testing::make_cache(3, 2, {{9, vec({12.6, 15.2})}, {6, vec({6, 11})}, {3, vec({3, 5})}});
}

TEST(Predict, BuilderCachesHoldIntendedDifferences) {
    const DerivativeCache c = second_order_cache();
    EXPECT_TRUE(c.diffs()[0].isApprox(vec({3, 5}), 1e-14));
    EXPECT_TRUE(c.diffs()[1].isApprox(vec({1, 2}), 1e-13));
    EXPECT_TRUE(c.diffs()[2].isApprox(vec({0.4, -0.2}), 1e-12));
}

TEST(Predict, FirstOrderTaylorExample) {
    const Prediction p = predict(first_order_cache(), BasisConfig::taylor(1), 1);
    EXPECT_TRUE(p.feature.isApprox(vec({2, 3}), 1e-14));
    EXPECT_EQ(p.order_used, 1);
    EXPECT_EQ(p.horizon, 1);
}

TEST(Predict, FirstOrderHermiteAtInvSqrt2MatchesTaylorExample) {
    const Prediction p = predict(first_order_cache(), BasisConfig::hermite(1, kInvSqrt2), 1);
    EXPECT_LE((p.feature - vec({2, 3})).norm(), 1e-12);
}

TEST(Predict, SecondOrderHermiteExample) {
    const Prediction p = predict(second_order_cache(), BasisConfig::hermite(2, 0.5), 2);
    EXPECT_LE((p.feature - vec({2.1, 2.95})).norm(), 1e-12);
}

TEST(Predict, OrderZeroIsReuse) {
    const DerivativeCache c = second_order_cache();
    for (const BasisConfig& cfg : {BasisConfig::taylor(0), BasisConfig::hermite(0, 0.3)}) {
        const Prediction p = predict(c, cfg, 2);
        EXPECT_EQ(p.feature, c.diffs()[0]);
        EXPECT_EQ(p.order_used, 0);
    }
}

TEST(Predict, TruncatesToAvailableOrderDuringWarmUp) {
    const DerivativeCache c = testing::make_cache(3, 4, {{6, vec({6, 11})}, {3, vec({3, 5})}});
    const Prediction p = predict(c, BasisConfig::taylor(4), 1);
    EXPECT_EQ(p.order_used, 1);
    EXPECT_TRUE(p.feature.isApprox(vec({2, 3}), 1e-14));
}

TEST(Predict, AffineDataIsExactOnceWarm) {
    std::mt19937_64 gen(17);
    const FeatureVector a = testing::random_vector(gen, 8);
    const FeatureVector b = testing::random_vector(gen, 8);
    for (int interval = 2; interval <= 10; ++interval) {
        DerivativeCache cache(interval, 4);
        std::int64_t t = 60 - 60 % interval;
        for (int n = 0; n < 5; ++n, t -= interval) cache.update(a + static_cast<double>(t) * b, t);
        const std::int64_t anchor = cache.t_last();
        for (int k = 1; k < interval; ++k) {
            const FeatureVector truth = a + static_cast<double>(anchor - k) * b;
            for (int order = 1; order <= 4; ++order) {
                const FeatureVector taylor = predict(cache, BasisConfig::taylor(order), k).feature;
                EXPECT_LE((taylor - truth).norm(), 1e-9 * truth.norm()) << "taylor order " << order;
                const FeatureVector hermite = predict(cache, BasisConfig::hermite(order, kInvSqrt2), k).feature;
                EXPECT_LE((hermite - truth).norm(), 1e-9 * truth.norm()) << "hermite order " << order;
            }
        }
    }
}

// Only sigma = 1/sqrt(2) makes the first Hermite term equal to the step.
TEST(Predict, HermiteAwayFromInvSqrt2IsBiasedOnAffineData) {
    const DerivativeCache c = testing::make_cache(3, 1, {{6, vec({6, 11})}, {3, vec({3, 5})}});
    const Prediction p = predict(c, BasisConfig::hermite(1, 0.5), 1);
    EXPECT_GT((p.feature - vec({2, 3})).norm(), 0.1);
}

TEST(Predict, TaylorHermiteFirstOrderEquivalenceOnRandomCaches) {
    std::mt19937_64 gen(23);
    std::uniform_int_distribution<int> interval_dist(2, 10);
    for (int trial = 0; trial < 1000; ++trial) {
        const int interval = interval_dist(gen);
        DerivativeCache cache(interval, 1);
        cache.update(testing::random_vector(gen, 6, 3.0), 4 * interval);
        cache.update(testing::random_vector(gen, 6, 3.0), 3 * interval);
        std::uniform_int_distribution<int> k_dist(1, interval - 1);
        const int k = k_dist(gen);
        const FeatureVector t = predict(cache, BasisConfig::taylor(1), k).feature;
        const FeatureVector h = predict(cache, BasisConfig::hermite(1, kInvSqrt2), k).feature;
        EXPECT_LE((t - h).norm(), 1e-12 * std::max(1.0, t.norm()));
    }
}

TEST(Predict, HermiteAtZeroHorizonIsNotIdentity) {
    const DerivativeCache c = second_order_cache();
    const double sigma = 0.6;
    PredictOptions opts;
    opts.allow_any_horizon = true;
    const Prediction p = predict(c, BasisConfig::hermite(2, sigma), 0, opts);
    const FeatureVector expected = c.diffs()[0] - sigma * sigma * c.diffs()[2];
    EXPECT_LE((p.feature - expected).norm(), 1e-12);
    EXPECT_EQ(predict(c, BasisConfig::taylor(2), 0, opts).feature, c.diffs()[0]);
}

TEST(Predict, LinearInCache) {
    std::mt19937_64 gen(4);
    DerivativeCache a(4, 3), b(4, 3), mix(4, 3);
    const double alpha = -2.0, beta = 0.75;
    for (std::int64_t t = 40; t >= 24; t -= 4) {
        const FeatureVector fa = testing::random_vector(gen, 5);
        const FeatureVector fb = testing::random_vector(gen, 5);
        a.update(fa, t);
        b.update(fb, t);
        mix.update(alpha * fa + beta * fb, t);
    }
    for (const BasisConfig& cfg : {BasisConfig::taylor(3), BasisConfig::hermite(3, 0.5)}) {
        for (int k = 1; k <= 3; ++k) {
            const FeatureVector expected =
                alpha * predict(a, cfg, k).feature + beta * predict(b, cfg, k).feature;
            EXPECT_LE((predict(mix, cfg, k).feature - expected).norm(), 1e-11 * std::max(1.0, expected.norm()));
        }
    }
}

TEST(Predict, Errors) {
    EXPECT_THROW(predict(DerivativeCache(3, 2), BasisConfig::taylor(2), 1), InsufficientDataError);
    const DerivativeCache c = second_order_cache();
    EXPECT_THROW(predict(c, BasisConfig::taylor(2), 0), ConfigError);
    EXPECT_THROW(predict(c, BasisConfig::taylor(2), 3), ConfigError);
    EXPECT_THROW(predict(c, BasisConfig::taylor(2), -1), ConfigError);
    PredictOptions opts;
    opts.allow_any_horizon = true;
    EXPECT_THROW(predict(c, BasisConfig::taylor(2), -1, opts), ConfigError);
    EXPECT_NO_THROW(predict(c, BasisConfig::taylor(2), 7, opts));
}

TEST(Predict, OverflowReportsNumericError) {
    const DerivativeCache c = testing::make_cache(
        1, 2, {{3, testing::vec({1e300})}, {2, testing::vec({-1e300})}, {1, testing::vec({1e300})}});
    PredictOptions opts;
    opts.allow_any_horizon = true;
    EXPECT_THROW(predict(c, BasisConfig::taylor(2), 1000000, opts), NumericError);
}

}  // namespace
}  // namespace hicache
