#include "hicache/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "hicache/error.hpp"
#include "hicache/parallel.hpp"
#include "hicache/rng.hpp"

namespace hicache {

namespace {

double distance(const double* a, const double* b, Eigen::Index dim) noexcept {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return std::sqrt(acc);
}

// Mean distance over all ordered pairs (i, j) with i != j.
double mean_within(const Eigen::MatrixXd& x) {
    const Eigen::Index n = x.cols();
    const Eigen::Index dim = x.rows();
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) total += distance(x.col(i).data(), x.col(j).data(), dim);
    }
    return 2.0 * total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

double mean_cross(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    const Eigen::Index dim = x.rows();
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
        const double* xi = x.col(i).data();
        for (Eigen::Index j = 0; j < y.cols(); ++j) total += distance(xi, y.col(j).data(), dim);
    }
    return total / (static_cast<double>(x.cols()) * static_cast<double>(y.cols()));
}

Eigen::MatrixXd standard_normal(Eigen::Index dim, Eigen::Index n, SplitMix64 rng) {
    Eigen::MatrixXd out(dim, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < dim; ++k) out(k, j) = rng.normal();
    }
    return out;
}

void check_shape(std::size_t n_samples, std::size_t dim, const EnergyTestOptions& options) {
    if (dim == 0) throw ConfigError("energy test needs dim >= 1");
    if (n_samples < dim + 2) {
        throw InsufficientDataError("energy test needs at least dim + 2 = " + std::to_string(dim + 2) +
                                    " samples, got " + std::to_string(n_samples));
    }
    if (options.n_replicates < 99) {
        throw ConfigError("energy test needs at least 99 null replicates, got " +
                          std::to_string(options.n_replicates));
    }
    if (options.n_mc_reference < 2) throw ConfigError("energy test reference size must be >= 2");
}

}  // namespace

Eigen::MatrixXd to_columns(std::span<const FeatureVector> samples) {
    if (samples.empty()) throw InsufficientDataError("no samples");
    const Eigen::Index dim = samples.front().size();
    Eigen::MatrixXd out(dim, static_cast<Eigen::Index>(samples.size()));
    for (std::size_t j = 0; j < samples.size(); ++j) {
        if (samples[j].size() != dim) {
            throw DimensionError("sample " + std::to_string(j) + " has dimension " +
                                 std::to_string(samples[j].size()) + ", expected " + std::to_string(dim));
        }
        if (!all_finite(samples[j])) throw NumericError("non-finite sample " + std::to_string(j));
        out.col(static_cast<Eigen::Index>(j)) = samples[j];
    }
    return out;
}

Whitened whiten(const Eigen::MatrixXd& samples) {
    const Eigen::Index n = samples.cols();
    if (n < 2) throw InsufficientDataError("whitening needs at least two samples");
    const Eigen::VectorXd mean = samples.rowwise().mean();
    const Eigen::MatrixXd centred = samples.colwise() - mean;
    const Eigen::MatrixXd cov = centred * centred.transpose() / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) {
        throw SingularCovarianceError("covariance eigendecomposition failed",
                                      std::numeric_limits<double>::infinity());
    }
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const double lmax = lambda.maxCoeff();
    const double lmin = lambda.minCoeff();
    const double scale = samples.cwiseAbs2().mean();
    const double condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();

    // Zero spread relative to the data magnitude: nothing left to whiten.
    const double eps = std::numeric_limits<double>::epsilon();
    if (!(lmax > eps * eps * scale) || !std::isfinite(lmax)) {
        throw SingularCovarianceError("sample covariance is numerically zero", condition);
    }

    Whitened out;
    out.condition_estimate = condition;
    out.pseudo_inverse = !(condition <= kWhiteningConditionLimit);
    Eigen::VectorXd inv_sqrt(lambda.size());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        const bool keep = lambda(i) > lmax / kWhiteningConditionLimit;
        inv_sqrt(i) = keep ? 1.0 / std::sqrt(lambda(i)) : 0.0;
    }
    const Eigen::MatrixXd& v = eig.eigenvectors();
    const Eigen::MatrixXd transform = v * inv_sqrt.asDiagonal() * v.transpose();
    out.samples = transform * centred;
    return out;
}

EnergyNullDistribution::EnergyNullDistribution(std::size_t n_samples, std::size_t dim,
                                               EnergyTestOptions options)
    : n_samples_(n_samples), dim_(dim), options_(options) {
    check_shape(n_samples, dim, options);
    const SplitMix64 root(options.seed);
    const auto d = static_cast<Eigen::Index>(dim);
    reference_ = standard_normal(d, static_cast<Eigen::Index>(options.n_mc_reference), root.substream(0));
    within_reference_ = mean_within(reference_);

    null_stats_.assign(options.n_replicates, 0.0);
    parallel_for(options.n_replicates, [&](std::size_t r) {
        const Eigen::MatrixXd draw =
            standard_normal(d, static_cast<Eigen::Index>(n_samples), root.substream(r + 1));
        null_stats_[r] = statistic(whiten(draw).samples);
    });
    std::sort(null_stats_.begin(), null_stats_.end());
}

double EnergyNullDistribution::statistic(const Eigen::MatrixXd& whitened) const {
    if (static_cast<std::size_t>(whitened.rows()) != dim_) {
        throw DimensionError("whitened samples have dimension " + std::to_string(whitened.rows()) +
                             ", null distribution expects " + std::to_string(dim_));
    }
    const double n = static_cast<double>(whitened.cols());
    const double cross = mean_cross(whitened, reference_);
    // V-statistic: the n zero self-distances stay in the denominator.
    const double within_sample = mean_within(whitened) * (n - 1.0) / n;
    // Not clipped at zero: the finite reference shifts every statistic by the
    // same amount, and the observed value and the null replicates share it, so
    // negative values still order correctly. Clipping would create ties.
    return n * (2.0 * cross - within_reference_ - within_sample);
}

double EnergyNullDistribution::p_value(double observed) const {
    const auto first_ge = std::lower_bound(null_stats_.begin(), null_stats_.end(), observed);
    const auto exceed = static_cast<double>(null_stats_.end() - first_ge);
    return (1.0 + exceed) / (static_cast<double>(null_stats_.size()) + 1.0);
}

EnergyTestResult energy_test(std::span<const FeatureVector> samples, const EnergyNullDistribution& null) {
    const Eigen::MatrixXd x = to_columns(samples);
    if (static_cast<std::size_t>(x.cols()) != null.n_samples() ||
        static_cast<std::size_t>(x.rows()) != null.dim()) {
        throw DimensionError("sample shape " + std::to_string(x.cols()) + "x" + std::to_string(x.rows()) +
                             " does not match the null distribution");
    }
    const Whitened w = whiten(x);
    EnergyTestResult result;
    result.statistic = null.statistic(w.samples);
    result.p_value = null.p_value(result.statistic);
    result.n_samples = null.n_samples();
    result.dim = null.dim();
    result.n_mc_reference = null.options().n_mc_reference;
    result.n_replicates = null.options().n_replicates;
    result.seed = null.options().seed;
    result.condition_estimate = w.condition_estimate;
    result.pseudo_inverse = w.pseudo_inverse;
    return result;
}

EnergyTestResult energy_test(std::span<const FeatureVector> samples, const EnergyTestOptions& options) {
    const std::size_t dim = samples.empty() ? 0 : static_cast<std::size_t>(samples.front().size());
    check_shape(samples.size(), dim, options);
    // Whiten first so degenerate input fails before the null is simulated.
    whiten(to_columns(samples));
    const EnergyNullDistribution null(samples.size(), dim, options);
    return energy_test(samples, null);
}

}  // namespace hicache
