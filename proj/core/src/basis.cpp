#include "hicache/basis.hpp"

#include <string>

#include "hicache/error.hpp"

namespace hicache {

namespace {

void check_sigma(double sigma) {
    // Written as a negated range test so NaN is rejected too.
    if (!(sigma > 0.0 && sigma <= 1.0)) {
        throw ConfigError("contraction factor sigma must lie in (0, 1], got " +
                          std::to_string(sigma));
    }
}

double int_power(double base, int n) noexcept {
    double out = 1.0;
    for (int i = 0; i < n; ++i) out *= base;
    return out;
}

}  // namespace

std::string_view to_string(BasisKind kind) noexcept {
    switch (kind) {
        case BasisKind::TaylorMonomial:
            return "taylor";
        case BasisKind::ScaledHermite:
            return "hermite";
    }
    return "unknown";
}

BasisConfig BasisConfig::taylor(int max_order) {
    BasisConfig c{BasisKind::TaylorMonomial, 1.0, max_order};
    c.validate();
    return c;
}

BasisConfig BasisConfig::hermite(int max_order, double sigma) {
    BasisConfig c{BasisKind::ScaledHermite, sigma, max_order};
    c.validate();
    return c;
}

void BasisConfig::validate() const {
    if (max_order < 0) {
        throw ConfigError("max_order must be non-negative, got " + std::to_string(max_order));
    }
    if (kind == BasisKind::ScaledHermite) check_sigma(sigma);
}

double hermite_eval(int n, double x) noexcept {
    if (n <= 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double scaled_hermite_eval(int n, double x, double sigma) {
    check_sigma(sigma);
    return int_power(sigma, n) * hermite_eval(n, sigma * x);
}

double basis_value(const BasisConfig& config, int n, double step) {
    if (n < 0 || n > config.max_order) {
        throw ConfigError("basis order " + std::to_string(n) + " outside [0, " +
                          std::to_string(config.max_order) + "]");
    }
    if (n == 0) return 1.0;
    switch (config.kind) {
        case BasisKind::TaylorMonomial:
            return int_power(step, n);
        case BasisKind::ScaledHermite:
            return scaled_hermite_eval(n, step, config.sigma);
    }
    throw ConfigError("unknown basis kind");
}

}  // namespace hicache
