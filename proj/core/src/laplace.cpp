#include "mcv2x/laplace.hpp"

#include <cmath>
#include <stdexcept>

#include "mcv2x/quadrature.hpp"

namespace mcv2x {

double laplace_interference(double j, double x_m, double lambda, double tx_power_w,
                            double alpha, double mu, double rel_tol, double abs_tol) {
    if (j < 0.0) throw std::invalid_argument("Laplace argument must be >= 0");
    if (!(x_m > 0.0)) throw std::invalid_argument("x_m must be > 0");
    if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
    if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1 for integrability");
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
    if (j == 0.0 || lambda == 0.0) return 1.0;

    const double jp = j * tx_power_w;
    auto integrand = [jp, alpha, mu](double x) {
        const double v = jp * std::pow(x, -alpha);
        if (!std::isfinite(v)) return 1.0;  // v -> inf limit
        return v / (v + mu);
    };
    const QuadratureResult tail = integrate_semi_infinite(integrand, x_m, rel_tol, abs_tol);
    return std::exp(-2.0 * lambda * tail.value);
}

namespace {
// ln w grid covering every regime the coverage/SE integrands visit; outside
// it the asymptotes are exact to the tolerance of the endpoints.
constexpr double kLogWMin = -36.8413614879047;  // ln 1e-16
constexpr double kLogWMax = 73.6827229758094;   // ln 1e32
constexpr int kNodes = 1537;
}  // namespace

LaplaceTable::LaplaceTable(double alpha, double rel_tol)
    : alpha_(alpha), t_min_(kLogWMin), t_max_(kLogWMax) {
    if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1 for integrability");
    dt_ = (t_max_ - t_min_) / (kNodes - 1);
    log_g_.resize(kNodes);
    slope_.resize(kNodes);
    for (int i = 0; i < kNodes; ++i) {
        const double w = std::exp(t_min_ + i * dt_);
        auto integrand = [w, alpha](double u) {
            const double v = w * std::pow(u, -alpha);
            return v / (v + 1.0);
        };
        const QuadratureResult g = integrate_semi_infinite(integrand, 1.0, rel_tol, 1e-300);
        log_g_[static_cast<std::size_t>(i)] = std::log(g.value);
    }
    // centered slopes for Hermite interpolation; one-sided at the ends
    for (int i = 0; i < kNodes; ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (i == 0)
            slope_[k] = (log_g_[1] - log_g_[0]) / dt_;
        else if (i == kNodes - 1)
            slope_[k] = (log_g_[k] - log_g_[k - 1]) / dt_;
        else
            slope_[k] = (log_g_[k + 1] - log_g_[k - 1]) / (2.0 * dt_);
    }
}

double LaplaceTable::tail_integral(double w) const {
    if (w < 0.0) throw std::invalid_argument("w must be >= 0");
    if (w == 0.0) return 0.0;
    const double t = std::log(w);
    if (t <= t_min_) {
        // G ~ w / (alpha - 1)
        return w / (alpha_ - 1.0);
    }
    if (t >= t_max_) {
        // G ~ c * w^(1/alpha)
        return std::exp(log_g_.back() + (t - t_max_) / alpha_);
    }
    const double pos = (t - t_min_) / dt_;
    auto cell = static_cast<std::size_t>(pos);
    if (cell >= log_g_.size() - 1) cell = log_g_.size() - 2;
    const double s = pos - static_cast<double>(cell);
    const double y0 = log_g_[cell], y1 = log_g_[cell + 1];
    const double d0 = slope_[cell] * dt_, d1 = slope_[cell + 1] * dt_;
    const double s2 = s * s, s3 = s2 * s;
    const double y = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * d0 +
                     (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * d1;
    return std::exp(y);
}

double LaplaceTable::zeta(double j, double x_m, double lambda, double tx_power_w,
                          double mu) const {
    if (j < 0.0) throw std::invalid_argument("Laplace argument must be >= 0");
    if (!(x_m > 0.0)) throw std::invalid_argument("x_m must be > 0");
    if (j == 0.0 || lambda == 0.0) return 1.0;
    const double w = j * tx_power_w * std::pow(x_m, -alpha_) / mu;
    if (!std::isfinite(w)) return 0.0;
    return std::exp(-2.0 * lambda * x_m * tail_integral(w));
}

}  // namespace mcv2x
