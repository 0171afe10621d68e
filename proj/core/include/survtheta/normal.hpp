#pragma once

namespace survtheta {

/// Standard normal CDF.
double normal_cdf(double x);
/// Upper tail 1 - Phi(x), accurate for large x.
double normal_sf(double x);
/// Inverse standard normal CDF for p in (0, 1); throws std::domain_error otherwise.
double normal_quantile(double p);
/// 2 * (1 - Phi(|z|)).
double two_sided_p(double z);

}  // namespace survtheta
