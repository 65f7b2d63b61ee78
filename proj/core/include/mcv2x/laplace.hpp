#pragma once

#include <vector>

namespace mcv2x {

// Laplace transform of the aggregate interference seen past the farthest
// cooperating base station of a two-sided 1-D PPP under Rayleigh fading:
//   zeta(j) = exp(-2*lambda * I),
//   I = integral_{x_m}^{inf} j*P*x^-alpha / (j*P*x^-alpha + mu) dx.
// Evaluated by adaptive quadrature on the mapped semi-infinite interval.
// Requires alpha > 1 for integrability; j >= 0; result in (0, 1].
double laplace_interference(double j, double x_m, double lambda, double tx_power_w,
                            double alpha, double mu, double rel_tol = 1e-6,
                            double abs_tol = 1e-10);

// The same transform through its scale-free form: substituting u = x/x_m
// gives I = x_m * G(w) with w = j*P*x_m^-alpha / mu and
//   G(w) = integral_1^inf w*u^-alpha / (w*u^-alpha + 1) du,
// a one-parameter family per alpha. The table holds ln G on a uniform ln w
// grid with monotone cubic interpolation plus the exact small/large-w
// asymptotes (G ~ w/(alpha-1), G ~ c*w^(1/alpha)); built once, then each
// evaluation is O(1), which is what makes sampling 1e5 distance tuples cheap.
class LaplaceTable {
public:
    explicit LaplaceTable(double alpha, double rel_tol = 1e-9);

    double alpha() const { return alpha_; }

    /// G(w) for w >= 0.
    double tail_integral(double w) const;

    /// zeta(j) for interferers beyond x_m at rate lambda.
    double zeta(double j, double x_m, double lambda, double tx_power_w, double mu) const;

private:
    double alpha_;
    double t_min_, t_max_, dt_;
    std::vector<double> log_g_;
    std::vector<double> slope_;
};

}  // namespace mcv2x
