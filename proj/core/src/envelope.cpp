#include "hicache/envelope.hpp"

#include <cmath>
#include <string>

#include "hicache/error.hpp"

namespace hicache {

namespace {

double factorial(int n) {
    double out = 1.0;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

void check_order(int order) {
    if (order < 0) throw ConfigError("envelope order must be >= 0, got " + std::to_string(order));
}

}  // namespace

double taylor_error_envelope(int order, double k, double sup_deriv) {
    check_order(order);
    return std::pow(std::abs(k), order + 1) / factorial(order + 1) * sup_deriv;
}

double hermite_truncation_envelope(int order, double sigma, double ds) {
    check_order(order);
    if (!(sigma > 0.0 && sigma <= 1.0)) throw ConfigError("sigma must lie in (0, 1]");
    const double base = sigma * std::sqrt(2.0) * std::abs(ds);
    const double sd = sigma * ds;
    return std::pow(base, order + 1) / std::sqrt(factorial(order + 1)) * std::exp(sd * sd / 2.0);
}

}  // namespace hicache
