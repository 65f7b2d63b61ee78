#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mcv2x/config.hpp"
#include "mcv2x/expectation.hpp"
#include "mcv2x/laplace.hpp"

namespace mcv2x {

// Closed-form/integral engine for downlink multi-connectivity metrics:
// coverage probability P(SINR > t) and spectral efficiency E[ln(1+SINR)]
// of the typical vehicle, plus the single-connectivity baseline tier.
//
// Antenna height is deliberately ignored here: the distance laws are those
// of the plain 1-D point process. Callers comparing against a simulation
// with antenna_height_m > 0 should surface a warning.

/// Sum of received long-term powers P * x_i^-alpha over the cooperating set.
double signal_power_sum(std::span<const double> distances, double tx_power_w, double alpha);

// Coverage conditioned on the cooperating-set distances: the Rayleigh tail
// factor exp(-mu*t*noise/S) times the interference Laplace transform at
// j = mu*t/S, interferers beyond the farthest cooperator at the displaced
// DBS intensity. Distances must be strictly increasing and positive.
double conditional_coverage(std::span<const double> distances, const Scenario& sc,
                            double t_linear, const SolverOptions& solver);

// P(SINR > t) for connectivity order m. m = 1 runs deterministic nested
// quadrature end-to-end; m >= 2 averages conditional_coverage over sampled
// ordered distances (solver.distance_samples draws, reproducible by seed).
// With solver.nested_quadrature_m2, m = 2 instead uses the deterministic
// two-level quadrature cross-check path.
MetricEstimate coverage_probability(const Scenario& sc, int m, double t_linear,
                                    const SolverOptions& solver, std::uint64_t seed);

/// coverage_probability over a grid of thresholds; the same distance sample
/// set (same seed) backs every grid point.
std::vector<MetricEstimate> coverage_curve(const Scenario& sc, int m,
                                           std::span<const double> t_linear_grid,
                                           const SolverOptions& solver, std::uint64_t seed);

/// E[ln(1+SINR)] in nats/s/Hz for connectivity order m (divide by ln 2 for
/// bits/s/Hz). Same engine split as coverage_probability.
MetricEstimate spectral_efficiency(const Scenario& sc, int m, const SolverOptions& solver,
                                   std::uint64_t seed);

/// Single-connectivity baseline coverage (CBS tier, displaced intensity),
/// one semi-infinite quadrature over the serving distance.
MetricEstimate single_coverage(const Scenario& sc, double t_linear,
                               const SolverOptions& solver);

/// Single-connectivity baseline spectral efficiency (nats/s/Hz), double
/// quadrature: serving distance outer, threshold inner.
MetricEstimate single_spectral_efficiency(const Scenario& sc, const SolverOptions& solver);

}  // namespace mcv2x
