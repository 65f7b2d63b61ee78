#include "mcv2x/expectation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mcv2x/parallel.hpp"

namespace mcv2x {

const char* to_string(EstimateMethod method) {
    switch (method) {
        case EstimateMethod::quadrature: return "quadrature";
        case EstimateMethod::distance_sampling: return "distance-sampling";
        case EstimateMethod::full_simulation: return "full-simulation";
    }
    return "unknown";
}

namespace {

struct Moments {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    // Chan et al. pairwise merge; associative enough for fixed merge order.
    void merge(const Moments& other) {
        if (other.n == 0) return;
        if (n == 0) {
            *this = other;
            return;
        }
        const double d = other.mean - mean;
        const auto total = static_cast<double>(n + other.n);
        mean += d * static_cast<double>(other.n) / total;
        m2 += other.m2 + d * d * static_cast<double>(n) * static_cast<double>(other.n) / total;
        n += other.n;
    }
};

constexpr std::int64_t kChunk = 4096;

}  // namespace

MetricEstimate expect_over_ordered_distances(
    int m, double lambda, const std::function<double(const OrderedDistances&)>& functional,
    int samples, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");

    const std::int64_t n = samples;
    const std::int64_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<Moments> partial(static_cast<std::size_t>(n_chunks));
    const RngStream root = RngStream::from_seed(seed);

    parallel_chunks(n, kChunk, [&](std::int64_t begin, std::int64_t end, std::int64_t chunk) {
        Moments local;
        for (std::int64_t i = begin; i < end; ++i) {
            RngStream stream = root.child(static_cast<std::uint64_t>(i));
            const OrderedDistances xs = sample_ordered_distances(lambda, m, stream);
            const double v = functional(xs);
            if (!std::isfinite(v)) {
                std::ostringstream msg;
                msg << "functional returned non-finite value at distances (";
                for (std::size_t k = 0; k < xs.distances.size(); ++k)
                    msg << (k ? ", " : "") << xs.distances[k];
                msg << ")";
                throw std::runtime_error(msg.str());
            }
            local.add(v);
        }
        partial[static_cast<std::size_t>(chunk)] = local;
    });

    Moments total;
    for (const auto& p : partial) total.merge(p);

    MetricEstimate est;
    est.value = total.mean;
    est.std_error = total.n > 1
                        ? std::sqrt(total.m2 / static_cast<double>(total.n - 1) /
                                    static_cast<double>(total.n))
                        : 0.0;
    est.method = EstimateMethod::distance_sampling;
    est.samples = total.n;
    est.seed = seed;
    return est;
}

}  // namespace mcv2x
