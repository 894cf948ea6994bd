#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hicache/hicache.hpp"

namespace {

using namespace hicache;

FeatureVector random_feature(std::mt19937_64& gen, Eigen::Index dim) {
    std::normal_distribution<double> n;
    FeatureVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = n(gen);
    return v;
}

DerivativeCache warm_cache(int interval, int order, Eigen::Index dim) {
    std::mt19937_64 gen(1);
    DerivativeCache cache(interval, order);
    for (int i = order + 1; i >= 0; --i) cache.update(random_feature(gen, dim), 1000 - (order + 1 - i) * interval);
    return cache;
}

void BM_HermiteEval(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    double x = 0.37;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermite_eval(n, x));
        x += 1e-9;
    }
}
BENCHMARK(BM_HermiteEval)->Arg(2)->Arg(5)->Arg(10);

void BM_CacheUpdate(benchmark::State& state) {
    const auto dim = static_cast<Eigen::Index>(state.range(0));
    std::mt19937_64 gen(2);
    const FeatureVector f = random_feature(gen, dim);
    for (auto _ : state) {
        state.PauseTiming();
        DerivativeCache cache = warm_cache(6, 4, dim);
        state.ResumeTiming();
        cache.update(f, cache.t_last() - 6);
        benchmark::DoNotOptimize(cache.diffs().data());
    }
}
BENCHMARK(BM_CacheUpdate)->Arg(64)->Arg(3072);

void BM_PredictTaylor(benchmark::State& state) {
    const DerivativeCache cache = warm_cache(6, static_cast<int>(state.range(0)), 3072);
    const BasisConfig cfg = BasisConfig::taylor(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(predict(cache, cfg, 3).feature.data());
}
BENCHMARK(BM_PredictTaylor)->Arg(1)->Arg(2)->Arg(4);

void BM_PredictHermite(benchmark::State& state) {
    const DerivativeCache cache = warm_cache(6, static_cast<int>(state.range(0)), 3072);
    const BasisConfig cfg = BasisConfig::hermite(static_cast<int>(state.range(0)), 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(predict(cache, cfg, 3).feature.data());
}
BENCHMARK(BM_PredictHermite)->Arg(1)->Arg(2)->Arg(4);

// Wall time of a 50-step schedule whose oracle burns a fixed amount of work
// per call; the ratio between intervals approximates the speedup.
void BM_ScheduleWithBusyOracle(benchmark::State& state) {
    GeneratorSpec spec;
    spec.dim = 256;
    spec.total_steps = 50;
    const Trajectory truth = generate(spec);
    const ScheduleConfig cfg{50, static_cast<int>(state.range(0)), BasisConfig::hermite(2, 0.5)};
    const FeatureOracle oracle = trajectory_oracle(truth, 200000);
    for (auto _ : state) benchmark::DoNotOptimize(run_schedule(cfg, oracle).oracle_calls);
}
BENCHMARK(BM_ScheduleWithBusyOracle)->Arg(1)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_EnergyStatistic(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    EnergyTestOptions opts;
    const EnergyNullDistribution null(n, 8, opts);
    std::mt19937_64 gen(3);
    Eigen::MatrixXd x(8, static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < x.cols(); ++j) x.col(j) = random_feature(gen, 8);
    const Eigen::MatrixXd w = whiten(x).samples;
    for (auto _ : state) benchmark::DoNotOptimize(null.statistic(w));
}
BENCHMARK(BM_EnergyStatistic)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
