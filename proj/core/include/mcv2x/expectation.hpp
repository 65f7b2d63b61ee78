#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "mcv2x/ppp.hpp"

namespace mcv2x {

enum class EstimateMethod { quadrature, distance_sampling, full_simulation };

/// A scalar metric with its uncertainty and reproducibility metadata.
struct MetricEstimate {
    double value = 0.0;
    double std_error = 0.0;  // standard error, or quadrature error bound
    EstimateMethod method = EstimateMethod::quadrature;
    std::int64_t samples = 0;
    std::optional<std::uint64_t> seed;
};

const char* to_string(EstimateMethod method);

// Monte Carlo expectation of `functional` under the joint law of the m
// nearest two-sided PPP distances (rate lambda). The sample at index i is
// drawn from a stream derived from (seed, i), so the estimate is independent
// of evaluation order and thread count; partial moments are merged in fixed
// chunk order. Throws std::runtime_error naming the offending tuple if the
// functional returns a non-finite value.
MetricEstimate expect_over_ordered_distances(
    int m, double lambda, const std::function<double(const OrderedDistances&)>& functional,
    int samples, std::uint64_t seed);

}  // namespace mcv2x
