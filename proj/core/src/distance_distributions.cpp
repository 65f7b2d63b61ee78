#include "mcv2x/distance_distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace mcv2x {

double joint_distance_pdf(std::span<const double> distances, double lambda, bool lenient) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    if (distances.empty()) throw std::invalid_argument("need at least one distance");
    double prev = 0.0;
    for (double x : distances) {
        if (!(x > prev)) {
            if (lenient) return 0.0;
            throw std::invalid_argument("distances must be strictly increasing and positive");
        }
        prev = x;
    }
    const auto n = static_cast<double>(distances.size());
    const double log_pdf = n * std::log(2.0 * lambda) - 2.0 * lambda * distances.back();
    return std::exp(log_pdf);
}

double nth_distance_pdf(double x, int n, double lambda) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(x > 0.0)) throw std::invalid_argument("x must be > 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    const double log_pdf = n * std::log(2.0 * lambda * x) - std::log(x) -
                           std::lgamma(static_cast<double>(n)) - 2.0 * lambda * x;
    return std::exp(log_pdf);
}

double nth_distance_cdf(double x, int n, double lambda) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (x < 0.0) throw std::invalid_argument("x must be >= 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    // 1 - exp(-r) * sum_{k<n} r^k/k!, r = 2*lambda*x
    const double r = 2.0 * lambda * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < n; ++k) {
        term *= r / k;
        sum += term;
    }
    return -std::expm1(-r + std::log(sum));
}

double nearest_distance_ccdf(double x, double lambda) {
    if (x < 0.0) throw std::invalid_argument("x must be >= 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    return std::exp(-2.0 * lambda * x);
}

}  // namespace mcv2x
