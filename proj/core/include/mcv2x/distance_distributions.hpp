#pragma once

#include <span>

namespace mcv2x {

// Closed-form distance laws of the two-sided 1-D PPP seen from the origin.
// Evaluated in log-space internally; large lambda*x regimes return clean
// denormals/zeros instead of overflowing intermediates.

// Joint density of the n nearest distances (x_1 < ... < x_n):
// (2*lambda)^n * exp(-2*lambda*x_n). Strict mode (default) rejects
// non-increasing input; lenient mode returns 0 for it (histogram tooling).
double joint_distance_pdf(std::span<const double> distances, double lambda,
                          bool lenient = false);

/// Density of the n-th nearest distance: (2*lambda*x)^n / (x*(n-1)!) * exp(-2*lambda*x).
double nth_distance_pdf(double x, int n, double lambda);

/// CDF companion of nth_distance_pdf (Erlang with integer shape, closed form).
double nth_distance_cdf(double x, int n, double lambda);

/// P(no point within distance x of the origin) = exp(-2*lambda*x).
double nearest_distance_ccdf(double x, double lambda);

}  // namespace mcv2x
