#pragma once

#include <string_view>

namespace hicache {

enum class BasisKind { TaylorMonomial, ScaledHermite };

std::string_view to_string(BasisKind kind) noexcept;

/// Predictor basis selection.
///
/// `sigma` is the Hermite contraction factor and must lie in (0, 1]; 1 means
/// no contraction. It is ignored for the monomial basis. `max_order` is the
/// highest expansion order the predictor will use (4 or less in practice).
struct BasisConfig {
    BasisKind kind = BasisKind::TaylorMonomial;
    double sigma = 1.0;
    int max_order = 2;

    static BasisConfig taylor(int max_order);
    static BasisConfig hermite(int max_order, double sigma);

    /// Throws ConfigError when the invariants above are violated.
    void validate() const;

    friend bool operator==(const BasisConfig&, const BasisConfig&) = default;
};

/// Physicists' Hermite polynomial H_n(x) via the three-term recurrence
/// H_{n+1} = 2x H_n - 2n H_{n-1}. Overflows to +/-inf for extreme inputs.
double hermite_eval(int n, double x) noexcept;

/// sigma^n * H_n(sigma * x). Throws ConfigError unless 0 < sigma <= 1.
double scaled_hermite_eval(int n, double x, double sigma);

/// Value of the n-th basis function at `step`: step^n for the monomial
/// basis, the scaled Hermite polynomial otherwise. Predictors pass
/// step = -k for a horizon of k steps. n = 0 yields 1 for both bases.
double basis_value(const BasisConfig& config, int n, double step);

}  // namespace hicache
