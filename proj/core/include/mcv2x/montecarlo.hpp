#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mcv2x/config.hpp"
#include "mcv2x/ppp.hpp"

namespace mcv2x {

enum class DeploymentVariant {
    physical_shadowing,   // deploy at lambda_d, draw per-link log-normal gains
    displaced_intensity,  // deploy at the transformed intensity, unit gains
};

const char* to_string(DeploymentVariant variant);

struct SimulationSpec {
    SystemConfig config;
    int iterations = 10000;
    std::uint64_t master_seed = 1;
    DeploymentVariant variant = DeploymentVariant::physical_shadowing;
    double guard_band_km = 0.0;           // vehicles this close to a road end are not evaluated
    std::vector<int> connectivity_orders = {2};
    std::vector<double> thresholds_db = {0.0};
    int max_resample_attempts = 100;      // per-iteration budget for degenerate deployments
    long trace_row_limit = 0;             // > 0 collects per-vehicle trace rows up to the cap
};

struct OrderResult {
    int order = 0;
    std::vector<double> coverage;         // one entry per thresholds_db value
    std::vector<double> coverage_stderr;  // across-iteration standard errors
    double spectral_efficiency = 0.0;     // nats/s/Hz
    double se_stderr = 0.0;
};

struct TraceRow {
    long iteration;
    double vehicle_pos_km;
    int order;
    double sinr_db;
    bool covered;  // against config.threshold_db
};

struct SimulationResult {
    std::vector<double> thresholds_db;
    std::vector<OrderResult> per_order;   // sorted by ascending order
    long iterations_used = 0;
    long resampled_iterations = 0;
    std::uint64_t seed = 0;
    std::vector<TraceRow> trace;          // filled only when trace_row_limit > 0
};

// Snapshot-based system simulation: per iteration, deploy base stations and
// vehicles on the road, associate every evaluated vehicle with its best m
// stations by long-term received power, draw fresh Rayleigh gains per link,
// and score SINR against each threshold. Metrics are per-iteration vehicle
// means averaged across iterations, with standard errors across iterations.
// Bit-identical output for a given spec regardless of thread count.
SimulationResult simulate(const SimulationSpec& spec);

// Ranking step used inside simulate(), exposed for direct testing: indices
// of the m largest long-term powers shadow_gain * (r^2 + h^2)^(-alpha/2),
// best first. Throws SimulationError when fewer than m stations exist.
std::vector<std::size_t> associate(double vehicle_pos, std::span<const double> dbs_positions,
                                   std::span<const double> shadow_gains, double alpha,
                                   double antenna_height, int m);

// SINR with the cooperating set in the numerator and every remaining station
// plus noise in the denominator. fading/shadow_gains are per station.
double sinr_for_vehicle(double vehicle_pos, std::span<const std::size_t> cooperating,
                        std::span<const double> dbs_positions, std::span<const double> fading,
                        std::span<const double> shadow_gains, const Scenario& sc);

/// Deployment realization of the spec's first iteration (positions only;
/// shadowing is drawn lazily per link during simulation).
NetworkSnapshot make_snapshot(const SimulationSpec& spec);

}  // namespace mcv2x
