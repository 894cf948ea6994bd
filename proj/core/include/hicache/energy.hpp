#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hicache/feature.hpp"

namespace hicache {

struct EnergyTestOptions {
    std::size_t n_mc_reference = 2048;
    std::size_t n_replicates = 199;
    std::uint64_t seed = 0;
};

struct EnergyTestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n_samples = 0;
    std::size_t dim = 0;
    std::size_t n_mc_reference = 0;
    std::size_t n_replicates = 0;
    std::uint64_t seed = 0;
    /// Largest over smallest eigenvalue of the sample covariance.
    double condition_estimate = 1.0;
    /// Whitening dropped directions because the condition exceeded 1e12.
    bool pseudo_inverse = false;
};

/// Samples whitened by their own mean and covariance, one sample per column.
struct Whitened {
    Eigen::MatrixXd samples;
    double condition_estimate = 1.0;
    bool pseudo_inverse = false;
};

inline constexpr double kWhiteningConditionLimit = 1e12;

/// Centres and whitens `samples` (one per column) with the inverse symmetric
/// square root of the sample covariance. Directions with eigenvalue below
/// max_eigenvalue / 1e12 are dropped (pseudo-inverse). Throws
/// SingularCovarianceError when the covariance is numerically zero.
Whitened whiten(const Eigen::MatrixXd& samples);

/// Monte-Carlo null distribution of the energy statistic for a given
/// (n_samples, dim, options). The reference sample and every null replicate
/// derive from options.seed, so one instance can score any number of
/// observed samples of that shape and gives the same answer as energy_test()
/// with the same options.
class EnergyNullDistribution {
public:
    /// Throws InsufficientDataError when n_samples < dim + 2 and ConfigError
    /// when n_replicates < 99 or n_mc_reference < 2.
    EnergyNullDistribution(std::size_t n_samples, std::size_t dim, EnergyTestOptions options = {});

    /// n * (2A - B - C) for already whitened samples.
    double statistic(const Eigen::MatrixXd& whitened) const;

    /// (1 + #{null >= observed}) / (n_replicates + 1).
    double p_value(double observed) const;

    std::size_t n_samples() const noexcept { return n_samples_; }
    std::size_t dim() const noexcept { return dim_; }
    const EnergyTestOptions& options() const noexcept { return options_; }
    /// Sorted ascending.
    const std::vector<double>& null_statistics() const noexcept { return null_stats_; }
    /// Mean pairwise distance within the reference sample.
    double reference_spread() const noexcept { return within_reference_; }

private:
    std::size_t n_samples_;
    std::size_t dim_;
    EnergyTestOptions options_;
    Eigen::MatrixXd reference_;
    double within_reference_ = 0.0;
    std::vector<double> null_stats_;
};

/// Energy goodness-of-fit test for multivariate normality.
///
/// The sample is whitened with its own mean and covariance and compared with
/// a Monte-Carlo standard-normal reference of size n_mc_reference:
///
///   E = n * (2A - B - C)
///
/// A is the mean sample-to-reference distance, B the mean distance within
/// the reference and C the mean distance within the sample. The p-value
/// comes from n_replicates standard-normal samples of the same size pushed
/// through the same pipeline. Large E means non-normal.
EnergyTestResult energy_test(std::span<const FeatureVector> samples, const EnergyTestOptions& options = {});

/// Same test scored against a prebuilt null distribution.
EnergyTestResult energy_test(std::span<const FeatureVector> samples, const EnergyNullDistribution& null);

/// Packs vectors into a dim x n matrix. Throws DimensionError on mismatch.
Eigen::MatrixXd to_columns(std::span<const FeatureVector> samples);

}  // namespace hicache
