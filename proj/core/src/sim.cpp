#include "hicache/sim.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "hicache/error.hpp"
#include "hicache/rng.hpp"

namespace hicache {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

// Lower Cholesky factor of the SE kernel over timesteps T..1. Diagonal jitter
// starts at 1e-10 amplitude^2 and grows by 10x up to 1e-6 amplitude^2.
Eigen::MatrixXd se_kernel_factor(const GpSquaredExponential& gp, std::int64_t steps) {
    const auto n = static_cast<Eigen::Index>(steps);
    const double amp2 = gp.amplitude * gp.amplitude;
    const double inv_two_l2 = 1.0 / (2.0 * gp.length_scale * gp.length_scale);
    Eigen::MatrixXd kernel(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double d = static_cast<double>(i - j);
            kernel(i, j) = kernel(j, i) = amp2 * std::exp(-d * d * inv_two_l2);
        }
    }
    for (double jitter = 1e-10; jitter <= 1e-6 * 1.0000001; jitter *= 10.0) {
        Eigen::MatrixXd k = kernel;
        k.diagonal().array() += jitter * amp2;
        Eigen::LLT<Eigen::MatrixXd> llt(k);
        if (llt.info() == Eigen::Success) return llt.matrixL();
    }
    throw NumericError("squared-exponential kernel is not positive definite after jitter 1e-6 "
                       "(length_scale=" + std::to_string(gp.length_scale) + ", T=" +
                       std::to_string(steps) + ")");
}

// Each function fills values(step, dim) for steps ordered T..1.
void fill_gp(const GpSquaredExponential& gp, const GeneratorSpec& spec, const SplitMix64& root,
             Eigen::MatrixXd& values) {
    const Eigen::MatrixXd factor = se_kernel_factor(gp, spec.total_steps);
    const auto n = values.rows();
    Eigen::VectorXd z(n);
    for (Eigen::Index d = 0; d < values.cols(); ++d) {
        SplitMix64 rng = root.substream(static_cast<std::uint64_t>(d));
        for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.normal();
        values.col(d) = factor.triangularView<Eigen::Lower>() * z;
    }
}

void fill_ou(const OrnsteinUhlenbeck& ou, const SplitMix64& root, Eigen::MatrixXd& values) {
    const double decay = std::exp(-ou.theta);
    const double step_sd = ou.noise * std::sqrt((1.0 - decay * decay) / (2.0 * ou.theta));
    const double stationary_sd = ou.noise / std::sqrt(2.0 * ou.theta);
    for (Eigen::Index d = 0; d < values.cols(); ++d) {
        SplitMix64 rng = root.substream(static_cast<std::uint64_t>(d));
        double x = ou.x0 ? *ou.x0 : (ou.noise > 0.0 ? stationary_sd * rng.normal() : 1.0);
        for (Eigen::Index i = 0; i < values.rows(); ++i) {
            values(i, d) = x;
            x = decay * x + step_sd * rng.normal();
        }
    }
}

void fill_poly(const PolyPlusNoise& poly, std::int64_t steps, const SplitMix64& root,
               Eigen::MatrixXd& values) {
    const double total = static_cast<double>(steps);
    std::vector<double> coeffs(static_cast<std::size_t>(poly.degree) + 1);
    for (Eigen::Index d = 0; d < values.cols(); ++d) {
        SplitMix64 rng = root.substream(static_cast<std::uint64_t>(d));
        for (double& c : coeffs) c = poly.coeff_scale * rng.normal();
        for (Eigen::Index i = 0; i < values.rows(); ++i) {
            const double u = static_cast<double>(steps - i) / total;
            double acc = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
            values(i, d) = acc;
        }
        if (poly.noise > 0.0) {
            for (Eigen::Index i = 0; i < values.rows(); ++i) values(i, d) += poly.noise * rng.normal();
        }
    }
}

}  // namespace

void GeneratorSpec::validate() const {
    require(dim >= 1, "generator dim must be >= 1");
    require(total_steps >= 1, "generator total_steps must be >= 1");
    std::visit(overloaded{
                   [&](const GpSquaredExponential& gp) {
                       require(gp.length_scale > 0.0, "gp length_scale must be > 0");
                       require(gp.amplitude > 0.0, "gp amplitude must be > 0");
                       require(total_steps <= kMaxDenseKernelSteps,
                               "gp-se supports at most " + std::to_string(kMaxDenseKernelSteps) +
                                   " steps; use ou for longer traces");
                   },
                   [](const OrnsteinUhlenbeck& ou) {
                       require(ou.theta > 0.0, "ou theta must be > 0");
                       require(ou.noise >= 0.0, "ou noise must be >= 0");
                       require(!ou.x0 || std::isfinite(*ou.x0), "ou x0 must be finite");
                   },
                   [](const PolyPlusNoise& p) {
                       require(p.degree >= 0 && p.degree <= 4, "poly degree must lie in [0, 4]");
                       require(std::isfinite(p.coeff_scale), "poly coeff_scale must be finite");
                       require(p.noise >= 0.0, "poly noise must be >= 0");
                   },
               },
               kind);
}

std::string_view kind_name(const GeneratorKind& kind) noexcept {
    return std::visit(overloaded{
                          [](const GpSquaredExponential&) { return std::string_view("gp-se"); },
                          [](const OrnsteinUhlenbeck&) { return std::string_view("ou"); },
                          [](const PolyPlusNoise&) { return std::string_view("poly"); },
                      },
                      kind);
}

Trajectory generate(const GeneratorSpec& spec) {
    spec.validate();
    const SplitMix64 root(spec.seed);
    Eigen::MatrixXd values(static_cast<Eigen::Index>(spec.total_steps),
                           static_cast<Eigen::Index>(spec.dim));
    std::visit(overloaded{
                   [&](const GpSquaredExponential& gp) { fill_gp(gp, spec, root, values); },
                   [&](const OrnsteinUhlenbeck& ou) { fill_ou(ou, root, values); },
                   [&](const PolyPlusNoise& p) { fill_poly(p, spec.total_steps, root, values); },
               },
               spec.kind);

    Trajectory out(spec.dim);
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        out.append(spec.total_steps - i, values.row(i).transpose());
    }
    return out;
}

}  // namespace hicache
