#include "mcv2x/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "mcv2x/quadrature.hpp"

namespace mcv2x {

namespace {

constexpr double kTimeIntegralFloor = 1e-10;  // integrand level treated as dead
constexpr double kTimeMax = 700.0;            // exp(t) overflows shortly after

struct TimeIntegral {
    double value;
    double error_bound;
};

double fixed_cutoff(const SolverOptions& solver) {
    const auto& p = solver.t_integral_cutoff_policy;
    if (p.rfind("fixed:", 0) == 0) return std::stod(p.substr(6));
    return 0.0;
}

// Integral over t > 0 of a decaying SINR-tail integrand. Default policy
// doubles the upper limit until the integrand is dead and the last doubling
// stopped mattering; "fixed:<T>" integrates [0, T] once.
template <typename H>
TimeIntegral time_integral(H&& h, const SolverOptions& solver) {
    const double fixed = fixed_cutoff(solver);
    if (fixed > 0.0) {
        const QuadratureResult q =
            integrate_finite(h, 0.0, std::min(fixed, kTimeMax), solver.rel_tol, solver.abs_tol);
        return {q.value, q.error_bound};
    }
    double total = 0.0;
    double err = 0.0;
    double lo = 0.0, hi = 8.0;
    for (;;) {
        const QuadratureResult q = integrate_finite(h, lo, hi, solver.rel_tol, solver.abs_tol);
        total += q.value;
        err += q.error_bound;
        const bool dead = std::fabs(h(hi)) < kTimeIntegralFloor;
        const bool settled = std::fabs(q.value) < solver.rel_tol * std::fabs(total);
        if (dead && settled) return {total, err};
        if (hi >= kTimeMax) return {total, err};
        lo = hi;
        hi = std::min(hi * 2.0, kTimeMax);
    }
}

double sum_or_inf(std::span<const double> distances, double tx_power_w, double alpha) {
    double s = 0.0;
    for (double x : distances) s += tx_power_w * std::pow(x, -alpha);
    return s;
}

void check_increasing(std::span<const double> distances) {
    if (distances.empty()) throw std::invalid_argument("need at least one distance");
    double prev = 0.0;
    for (double x : distances) {
        if (!(x > prev)) throw std::invalid_argument("distances must be strictly increasing");
        prev = x;
    }
}

// Conditional coverage evaluated through the precomputed Laplace table;
// bitwise-stable and cheap enough for 1e5-sample expectations.
double conditional_coverage_tabled(const OrderedDistances& xs, const Scenario& sc,
                                   const LaplaceTable& table, double t_linear) {
    const double s = sum_or_inf(xs.distances, sc.tx_power_w, sc.alpha);
    if (!(s > 0.0)) return 0.0;
    const double j = sc.mu * t_linear / s;
    const double noise = std::exp(-sc.mu * t_linear * sc.noise_w / s);
    return noise * table.zeta(j, xs.distances.back(), sc.lambda_dbs_displaced_per_m,
                              sc.tx_power_w, sc.mu);
}

// ln(1+SINR) expectation conditioned on distances, as the integral over
// t > 0 of exp(-beta*noise/S) * zeta(beta/S) with beta = mu*(e^t - 1).
double conditional_se_tabled(const OrderedDistances& xs, const Scenario& sc,
                             const LaplaceTable& table, const SolverOptions& solver) {
    const double s = sum_or_inf(xs.distances, sc.tx_power_w, sc.alpha);
    if (!(s > 0.0)) return 0.0;
    if (!std::isfinite(s)) return kTimeMax;  // infinite SINR: integrand is 1 everywhere
    const double x_m = xs.distances.back();
    auto h = [&](double t) {
        const double beta = sc.mu * std::expm1(t);
        if (!std::isfinite(beta)) return 0.0;
        const double noise = std::exp(-beta * sc.noise_w / s);
        if (noise == 0.0) return 0.0;
        return noise * table.zeta(beta / s, x_m, sc.lambda_dbs_displaced_per_m,
                                  sc.tx_power_w, sc.mu);
    };
    return time_integral(h, solver).value;
}

MetricEstimate quadrature_estimate(double value, double bound, long evals) {
    MetricEstimate est;
    est.value = value;
    est.std_error = bound;
    est.method = EstimateMethod::quadrature;
    est.samples = evals;
    est.seed = std::nullopt;
    return est;
}

MetricEstimate coverage_m1_nested(const Scenario& sc, double t_linear,
                                  const SolverOptions& solver) {
    const double lam = sc.lambda_dbs_displaced_per_m;
    long evals = 0;
    auto outer = [&](double x) {
        ++evals;
        const double weight = 2.0 * lam * std::exp(-2.0 * lam * x);
        if (weight == 0.0) return 0.0;
        const double xs[1] = {x};
        return weight * conditional_coverage(xs, sc, t_linear, solver);
    };
    const QuadratureResult q = integrate_semi_infinite(outer, 0.0, solver.rel_tol, solver.abs_tol);
    return quadrature_estimate(q.value, q.error_bound, q.evaluations);
}

MetricEstimate coverage_m2_nested(const Scenario& sc, double t_linear,
                                  const SolverOptions& solver) {
    const double lam = sc.lambda_dbs_displaced_per_m;
    auto outer = [&](double x2) {
        const double weight = 4.0 * lam * lam * std::exp(-2.0 * lam * x2);
        if (weight == 0.0 || x2 <= 0.0) return 0.0;
        auto inner = [&](double x1) {
            if (x1 <= 0.0 || x1 >= x2) return 0.0;
            const double xs[2] = {x1, x2};
            return conditional_coverage(xs, sc, t_linear, solver);
        };
        const QuadratureResult qi =
            integrate_finite(inner, 0.0, x2, solver.rel_tol * 10.0, solver.abs_tol);
        return weight * qi.value;
    };
    const QuadratureResult q = integrate_semi_infinite(outer, 0.0, solver.rel_tol, solver.abs_tol);
    return quadrature_estimate(q.value, q.error_bound, q.evaluations);
}

MetricEstimate se_m1_nested(const Scenario& sc, const SolverOptions& solver) {
    const double lam = sc.lambda_dbs_displaced_per_m;
    const LaplaceTable table(sc.alpha);
    auto outer = [&](double x) {
        const double weight = 2.0 * lam * std::exp(-2.0 * lam * x);
        if (weight == 0.0 || x <= 0.0) return 0.0;
        OrderedDistances xs;
        xs.distances = {x};
        return weight * conditional_se_tabled(xs, sc, table, solver);
    };
    const QuadratureResult q = integrate_semi_infinite(outer, 0.0, solver.rel_tol, solver.abs_tol);
    return quadrature_estimate(q.value, q.error_bound, q.evaluations);
}

}  // namespace

double signal_power_sum(std::span<const double> distances, double tx_power_w, double alpha) {
    check_increasing(distances);
    return sum_or_inf(distances, tx_power_w, alpha);
}

double conditional_coverage(std::span<const double> distances, const Scenario& sc,
                            double t_linear, const SolverOptions& solver) {
    check_increasing(distances);
    if (!(t_linear > 0.0)) throw std::invalid_argument("threshold must be > 0");
    const double s = sum_or_inf(distances, sc.tx_power_w, sc.alpha);
    if (!(s > 0.0)) return 0.0;
    const double j = sc.mu * t_linear / s;
    const double noise = std::exp(-sc.mu * t_linear * sc.noise_w / s);
    if (noise == 0.0) return 0.0;
    if (!std::isfinite(j)) return 0.0;
    return noise * laplace_interference(j, distances.back(), sc.lambda_dbs_displaced_per_m,
                                        sc.tx_power_w, sc.alpha, sc.mu, solver.rel_tol,
                                        solver.abs_tol);
}

MetricEstimate coverage_probability(const Scenario& sc, int m, double t_linear,
                                    const SolverOptions& solver, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (!(t_linear > 0.0)) throw std::invalid_argument("threshold must be > 0");
    if (m == 1) return coverage_m1_nested(sc, t_linear, solver);
    if (m == 2 && solver.nested_quadrature_m2) return coverage_m2_nested(sc, t_linear, solver);

    const LaplaceTable table(sc.alpha);
    return expect_over_ordered_distances(
        m, sc.lambda_dbs_displaced_per_m,
        [&](const OrderedDistances& xs) {
            return conditional_coverage_tabled(xs, sc, table, t_linear);
        },
        solver.distance_samples, seed);
}

std::vector<MetricEstimate> coverage_curve(const Scenario& sc, int m,
                                           std::span<const double> t_linear_grid,
                                           const SolverOptions& solver, std::uint64_t seed) {
    std::vector<MetricEstimate> out;
    out.reserve(t_linear_grid.size());
    if (m == 1 || (m == 2 && solver.nested_quadrature_m2)) {
        for (double t : t_linear_grid) out.push_back(coverage_probability(sc, m, t, solver, seed));
        return out;
    }
    const LaplaceTable table(sc.alpha);
    for (double t : t_linear_grid) {
        out.push_back(expect_over_ordered_distances(
            m, sc.lambda_dbs_displaced_per_m,
            [&](const OrderedDistances& xs) {
                return conditional_coverage_tabled(xs, sc, table, t);
            },
            solver.distance_samples, seed));
    }
    return out;
}

MetricEstimate spectral_efficiency(const Scenario& sc, int m, const SolverOptions& solver,
                                   std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (m == 1) return se_m1_nested(sc, solver);

    const LaplaceTable table(sc.alpha);
    return expect_over_ordered_distances(
        m, sc.lambda_dbs_displaced_per_m,
        [&](const OrderedDistances& xs) {
            return conditional_se_tabled(xs, sc, table, solver);
        },
        solver.distance_samples, seed);
}

MetricEstimate single_coverage(const Scenario& sc, double t_linear,
                               const SolverOptions& solver) {
    if (!(t_linear > 0.0)) throw std::invalid_argument("threshold must be > 0");
    const double lam = sc.lambda_cbs_displaced_per_m;
    auto outer = [&](double x) {
        const double weight = 2.0 * lam * std::exp(-2.0 * lam * x);
        if (weight == 0.0 || x <= 0.0) return 0.0;
        const double xa = std::pow(x, sc.alpha);
        const double noise = std::exp(-sc.mu * t_linear * sc.noise_w * xa / sc.tx_power_w);
        if (noise == 0.0) return 0.0;
        const double j = sc.mu * t_linear * xa / sc.tx_power_w;
        if (!std::isfinite(j)) return 0.0;
        return weight * noise *
               laplace_interference(j, x, lam, sc.tx_power_w, sc.alpha, sc.mu, solver.rel_tol,
                                    solver.abs_tol);
    };
    const QuadratureResult q = integrate_semi_infinite(outer, 0.0, solver.rel_tol, solver.abs_tol);
    return quadrature_estimate(q.value, q.error_bound, q.evaluations);
}

MetricEstimate single_spectral_efficiency(const Scenario& sc, const SolverOptions& solver) {
    const double lam = sc.lambda_cbs_displaced_per_m;
    auto outer = [&](double x) {
        const double weight = 2.0 * lam * std::exp(-2.0 * lam * x);
        if (weight == 0.0 || x <= 0.0) return 0.0;
        const double xa = std::pow(x, sc.alpha);
        auto h = [&](double t) {
            const double growth = std::expm1(t);
            if (!std::isfinite(growth)) return 0.0;
            const double noise =
                std::exp(-sc.mu * growth * sc.noise_w * xa / sc.tx_power_w);
            if (noise == 0.0) return 0.0;
            const double j = sc.mu * growth * xa / sc.tx_power_w;
            if (!std::isfinite(j)) return 0.0;
            return noise * laplace_interference(j, x, lam, sc.tx_power_w, sc.alpha, sc.mu,
                                                solver.rel_tol * 10.0, solver.abs_tol);
        };
        return weight * time_integral(h, solver).value;
    };
    const QuadratureResult q = integrate_semi_infinite(outer, 0.0, solver.rel_tol, solver.abs_tol);
    return quadrature_estimate(q.value, q.error_bound, q.evaluations);
}

}  // namespace mcv2x
