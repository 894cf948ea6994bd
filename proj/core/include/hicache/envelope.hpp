#pragma once

namespace hicache {

// Constant-free error envelopes. Only their shape (growth in horizon, decay
// in order) is meaningful; the unknown leading constants are not modelled.

/// k^(order+1) / (order+1)! * sup_deriv: monomial-basis truncation error.
double taylor_error_envelope(int order, double k, double sup_deriv);

/// (sigma sqrt(2) |ds|)^(order+1) / sqrt((order+1)!) * exp((sigma ds)^2 / 2):
/// scaled Hermite truncation error.
double hermite_truncation_envelope(int order, double sigma, double ds);

}  // namespace hicache
