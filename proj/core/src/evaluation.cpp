#include "hicache/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hicache/cache.hpp"
#include "hicache/error.hpp"
#include "hicache/predictor.hpp"

namespace hicache {

namespace {

bool has_history(const Trajectory& traj, std::int64_t t, int interval, int order) {
    for (int j = 0; j <= order; ++j) {
        if (!traj.contains(t + static_cast<std::int64_t>(j) * interval)) return false;
    }
    return true;
}

}  // namespace

DifferenceSamples difference_samples(const Trajectory& trajectory, int interval, int order) {
    if (interval < 1) throw ConfigError("interval must be >= 1");
    if (order < 0) throw ConfigError("difference order must be >= 0");

    std::vector<double> binom(static_cast<std::size_t>(order) + 1, 1.0);
    for (int j = 1; j <= order; ++j) binom[j] = binom[j - 1] * (order - j + 1) / j;
    double scale = 1.0;
    for (int j = 0; j < order; ++j) scale *= -static_cast<double>(interval);

    DifferenceSamples out;
    double feature_scale = 0.0;
    double diff_scale = 0.0;
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        const std::int64_t t = trajectory.time(i);
        if (t % interval != 0 || !has_history(trajectory, t, interval, order)) continue;
        FeatureVector acc = FeatureVector::Zero(static_cast<Eigen::Index>(trajectory.dim()));
        for (int j = 0; j <= order; ++j) {
            const FeatureVector& f = trajectory.at(t + static_cast<std::int64_t>(j) * interval);
            feature_scale = std::max(feature_scale, f.cwiseAbs().maxCoeff());
            acc += ((j % 2 == 0) ? binom[j] : -binom[j]) * f;
        }
        acc /= scale;
        diff_scale = std::max(diff_scale, acc.cwiseAbs().maxCoeff() * std::abs(scale));
        out.vectors.push_back(std::move(acc));
        out.anchors.push_back(t);
    }
    if (out.vectors.empty()) {
        throw InsufficientDataError("trajectory has no anchor with " + std::to_string(order) +
                                    " predecessors at interval " + std::to_string(interval));
    }
    // Undo the 1/interval^k scaling so the check compares like with like.
    out.degenerate = order > 0 && diff_scale <= 1e-9 * feature_scale;
    return out;
}

std::optional<double> error_ratio(double reference_mse, double candidate_mse) noexcept {
    if (!(candidate_mse > 0.0)) return std::nullopt;
    return reference_mse / candidate_mse;
}

ErrorReport non_cumulative_eval(const Trajectory& truth, int interval, std::span<const BasisConfig> configs) {
    if (interval < 2) throw ConfigError("non-cumulative evaluation needs interval >= 2");
    if (configs.empty()) throw ConfigError("no basis configurations to evaluate");
    int max_order = 0;
    for (const auto& c : configs) {
        c.validate();
        max_order = std::max(max_order, c.max_order);
    }

    ErrorReport report;
    report.interval = interval;
    report.dim = truth.dim();
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const std::int64_t t = truth.time(i);
        if (t % interval != 0 || !has_history(truth, t, interval, max_order)) continue;
        bool horizons_present = true;
        for (int k = 1; k < interval && horizons_present; ++k) horizons_present = truth.contains(t - k);
        if (horizons_present) report.anchors.push_back(t);
    }
    if (report.anchors.empty()) {
        throw InsufficientDataError("no anchor has warm-up for order " + std::to_string(max_order) +
                                    " and all horizons at interval " + std::to_string(interval));
    }

    const auto horizons = static_cast<std::size_t>(interval - 1);
    std::vector<std::vector<double>> sq_error(configs.size(), std::vector<double>(horizons, 0.0));
    for (const std::int64_t t : report.anchors) {
        DerivativeCache cache(interval, max_order);
        for (int j = max_order; j >= 0; --j) {
            const std::int64_t s = t + static_cast<std::int64_t>(j) * interval;
            cache.update(truth.at(s), s);
        }
        for (std::size_t c = 0; c < configs.size(); ++c) {
            for (int k = 1; k < interval; ++k) {
                const FeatureVector pred = predict(cache, configs[c], k).feature;
                sq_error[c][static_cast<std::size_t>(k - 1)] += (pred - truth.at(t - k)).squaredNorm();
            }
        }
    }

    const double denom = static_cast<double>(report.anchors.size()) * static_cast<double>(truth.dim());
    for (std::size_t c = 0; c < configs.size(); ++c) {
        BasisErrors be{configs[c], {}, {}};
        double running = 0.0;
        for (std::size_t h = 0; h < horizons; ++h) {
            const double mse = sq_error[c][h] / denom;
            running += mse;
            be.mse.push_back(mse);
            be.cumulative_mse.push_back(running);
        }
        report.bases.push_back(std::move(be));
    }
    const BasisErrors& ref = report.bases.front();
    for (std::size_t c = 1; c < report.bases.size(); ++c) {
        RatioSeries series;
        for (std::size_t h = 0; h < horizons; ++h) {
            series.per_horizon.push_back(error_ratio(ref.mse[h], report.bases[c].mse[h]));
            series.cumulative.push_back(error_ratio(ref.cumulative_mse[h], report.bases[c].cumulative_mse[h]));
        }
        report.ratios.push_back(std::move(series));
    }
    return report;
}

}  // namespace hicache
