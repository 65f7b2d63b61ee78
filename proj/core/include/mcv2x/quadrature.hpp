#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace mcv2x {

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    long evaluations = 0;
};

/// Thrown when the evaluation budget is exhausted; carries the partial result.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& message, QuadratureResult partial)
        : std::runtime_error(message), partial_(partial) {}
    const QuadratureResult& partial() const noexcept { return partial_; }

private:
    QuadratureResult partial_;
};

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
    0.405845151377397166906606412076961, 0.586087235467691130294144838258730,
    0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
    0.949107912342758524526189684047851, 0.991455371120812639206854697526329};
inline constexpr double kKronrodWeights[8] = {
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970};
// Gauss weights attach to Kronrod nodes 0, 2, 4, 6.
inline constexpr double kGaussWeights[4] = {
    0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
    0.279705391489276667901467771423780, 0.129484966168869693270611432679082};

struct Segment {
    double a, b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
Segment gk15(F& f, double a, double b, bool& ok) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double flo[8], fhi[8];
    flo[0] = fhi[0] = f(center);
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kKronrodNodes[i];
        flo[i] = f(center - dx);
        fhi[i] = f(center + dx);
    }

    double resk = kKronrodWeights[0] * flo[0];
    double resg = kGaussWeights[0] * flo[0];
    double resabs = kKronrodWeights[0] * std::fabs(flo[0]);
    for (int i = 1; i < 8; ++i) {
        resk += kKronrodWeights[i] * (flo[i] + fhi[i]);
        resabs += kKronrodWeights[i] * (std::fabs(flo[i]) + std::fabs(fhi[i]));
        if (i % 2 == 0) resg += kGaussWeights[i / 2] * (flo[i] + fhi[i]);
    }
    const double reskh = resk * 0.5;
    double resasc = kKronrodWeights[0] * std::fabs(flo[0] - reskh);
    for (int i = 1; i < 8; ++i) {
        resasc += kKronrodWeights[i] *
                  (std::fabs(flo[i] - reskh) + std::fabs(fhi[i] - reskh));
    }
    resasc *= std::fabs(half);

    const double value = resk * half;
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double tiny = resabs * std::fabs(half) * 50.0 * 2.2204460492503131e-16;
    err = std::max(err, tiny);
    ok = std::isfinite(value) && std::isfinite(err);
    return Segment{a, b, value, err};
}

template <typename F>
QuadratureResult adaptive(F& f, double a, double b, double rel_tol, double abs_tol,
                          int max_segments) {
    QuadratureResult res;
    bool ok = true;
    Segment first = gk15(f, a, b, ok);
    res.evaluations = 15;
    if (!ok) throw QuadratureError("integrand returned non-finite value", res);

    std::priority_queue<Segment> heap;
    heap.push(first);
    double total_value = first.value;
    double total_error = first.error;
    int segments = 1;

    const auto tolerance = [&] { return std::max(abs_tol, rel_tol * std::fabs(total_value)); };

    while (total_error > tolerance()) {
        if (segments >= max_segments) {
            res.value = total_value;
            res.error_bound = total_error;
            throw QuadratureError("quadrature did not converge within segment budget", res);
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; accept its estimate as-is
            total_error -= worst.error;
            worst.error = 0.0;
            heap.push(worst);
            continue;
        }
        Segment left = gk15(f, worst.a, mid, ok);
        if (!ok) throw QuadratureError("integrand returned non-finite value", res);
        Segment right = gk15(f, mid, worst.b, ok);
        if (!ok) throw QuadratureError("integrand returned non-finite value", res);
        res.evaluations += 30;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }

    // Re-sum in position order so the result does not depend on heap history.
    std::vector<Segment> segs;
    segs.reserve(segments);
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(),
              [](const Segment& x, const Segment& y) { return x.a < y.a; });
    double value = 0.0, error = 0.0;
    for (const auto& s : segs) {
        value += s.value;
        error += s.error;
    }
    res.value = value;
    res.error_bound = error;
    return res;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to
/// max(abs_tol, rel_tol * |integral|).
template <typename F>
QuadratureResult integrate_finite(F&& f, double a, double b, double rel_tol = 1e-6,
                                  double abs_tol = 1e-10, int max_segments = 4000) {
    if (!(a < b)) throw std::invalid_argument("integrate_finite requires a < b");
    return detail::adaptive(f, a, b, rel_tol, abs_tol, max_segments);
}

// Integral of f over [lower, inf). Mapped to (0, 1] by u = lower/x when
// lower > 0, else u = 1/(1 + x - lower); no hard truncation point, so slowly
// decaying tails (x^-alpha with alpha near 2) are integrated faithfully.
template <typename F>
QuadratureResult integrate_semi_infinite(F&& f, double lower, double rel_tol = 1e-6,
                                         double abs_tol = 1e-10, int max_segments = 4000) {
    if (!std::isfinite(lower)) throw std::invalid_argument("lower bound must be finite");
    if (lower > 0.0) {
        auto g = [&f, lower](double u) {
            const double x = lower / u;
            return f(x) * lower / (u * u);
        };
        return detail::adaptive(g, 0.0, 1.0, rel_tol, abs_tol, max_segments);
    }
    auto g = [&f, lower](double u) {
        const double x = lower + (1.0 - u) / u;
        return f(x) / (u * u);
    };
    return detail::adaptive(g, 0.0, 1.0, rel_tol, abs_tol, max_segments);
}

}  // namespace mcv2x
