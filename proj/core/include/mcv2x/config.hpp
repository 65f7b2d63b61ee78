#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mcv2x {

// Every deployment/channel parameter, in the units the values are usually
// quoted in (dBm, dB, nodes/km, km). Converted to SI exactly once by
// make_scenario(); nothing downstream touches dB or km again.
struct SystemConfig {
    double tx_power_dbm = 23.0;          // DBS transmit power
    double pathloss_exponent = 4.0;      // alpha, must be > 2
    double noise_power_dbm = -96.0;      // AWGN power
    double fading_rate = 1.0;            // mu; Rayleigh power gain ~ Exp(mu), mean 1/mu
    double shadow_mean_db = 0.0;         // mean of 10*log10(chi)
    double shadow_std_db = 2.0;          // std of 10*log10(chi)
    double antenna_height_m = 0.0;       // BS/vehicle antenna height difference
    double dbs_density_per_km = 3.0;     // cooperating tier
    double cbs_density_per_km = 6.0;     // single-connectivity baseline tier
    double vehicle_density_per_km = 20.0;
    double road_length_km = 30.0;
    int connectivity_order = 2;          // m, number of cooperating base stations
    double threshold_db = 0.0;           // SINR coverage threshold
};

struct SolverOptions {
    double rel_tol = 1e-6;
    double abs_tol = 1e-10;
    int distance_samples = 100000;       // samples for ordered-distance expectations
    int mc_iterations = 10000;           // full-simulation iterations
    std::string t_integral_cutoff_policy = "adaptive";  // "adaptive" or "fixed:<T>"
    bool nested_quadrature_m2 = false;   // deterministic cross-check path for m = 2
};

struct Violation {
    std::string field;
    std::string message;
};

/// Returns every violated invariant (empty means valid). Violations are data,
/// not exceptions.
std::vector<Violation> validate(const SystemConfig& cfg);

std::vector<Violation> validate(const SolverOptions& solver);

struct LoadedConfig {
    SystemConfig system;
    SolverOptions solver;
};

// Strict loader: every SystemConfig field is required, unknown keys are
// errors, the optional "solver" object accepts only SolverOptions keys.
// Throws ConfigError naming the field.
LoadedConfig load_config(const std::filesystem::path& path);
LoadedConfig parse_config(const std::string& json_text);

/// Serialize back to the exact schema load_config() accepts.
std::string config_to_json(const SystemConfig& cfg, const SolverOptions& solver);

// All quantities in SI (meters, nodes/m, watts); the single source every
// engine reads. Displaced intensities already carry the shadowing factor.
struct Scenario {
    double tx_power_w;
    double noise_w;
    double alpha;
    double mu;
    double shadow_mean_db;
    double shadow_std_db;
    double antenna_height_m;
    double lambda_dbs_per_m;
    double lambda_cbs_per_m;
    double lambda_vehicle_per_m;
    double lambda_dbs_displaced_per_m;
    double lambda_cbs_displaced_per_m;
    double road_length_m;
    int connectivity_order;
    double threshold_linear;
};

/// Convert a validated SystemConfig to SI working units. Throws
/// std::invalid_argument if the config does not validate.
Scenario make_scenario(const SystemConfig& cfg);

}  // namespace mcv2x
