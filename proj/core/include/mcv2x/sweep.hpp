#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mcv2x/config.hpp"
#include "mcv2x/montecarlo.hpp"

namespace mcv2x {

enum class SweepParameter { threshold_db, pathloss_exponent, dbs_density_per_km };

const char* to_string(SweepParameter parameter);
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::threshold_db;
    double start = 0.0;
    double stop = 40.0;
    int steps = 21;                      // inclusive linspace point count
    std::vector<int> orders = {1, 2, 3}; // order 1 = single-connectivity CBS tier
    bool run_analytic = true;
    bool run_simulation = true;
};

std::vector<Violation> validate(const SweepSpec& sweep);

struct RunOptions {
    std::uint64_t master_seed = 1;
    int iterations = 0;                  // 0 -> solver.mc_iterations
    double guard_band_km = 0.0;
    DeploymentVariant variant = DeploymentVariant::physical_shadowing;
};

// One output row per (parameter value, order, metric). Threshold sweeps emit
// coverage rows only (spectral efficiency does not depend on the threshold);
// other sweeps emit both metrics. Engine columns are empty when that engine
// did not run.
struct SweepRow {
    double parameter_value = 0.0;
    int order_m = 0;
    std::string metric_name;             // "coverage" | "spectral_efficiency"
    std::optional<double> analytic_value;
    std::optional<double> analytic_err;
    std::optional<double> simulated_value;
    std::optional<double> simulated_stderr;
    long iterations = 0;
    std::uint64_t seed = 0;
};

// Evaluate the sweep with the requested engines. Order 1 is served by the
// CBS tier (single-connectivity formulas; simulation deployed at the CBS
// density); orders >= 2 by the DBS tier. Densities and the displaced
// intensity are re-derived per point. Point seeds derive from
// (master_seed, point index) so points are independent of execution order.
std::vector<SweepRow> run_sweep(const SystemConfig& cfg, const SolverOptions& solver,
                                const SweepSpec& sweep, const RunOptions& run);

struct GainRow {
    double parameter_value = 0.0;
    int order_m = 0;
    double gain_percent = 0.0;
};

// Percentage spectral-efficiency gain of each multi-connectivity row over
// the order-1 baseline at the same parameter value:
// 100 * (SE_m - SE_1) / SE_1. Prefers analytic values, falls back to
// simulated. Throws std::invalid_argument listing missing grid points.
std::vector<GainRow> gain_report(const std::vector<SweepRow>& baseline,
                                 const std::vector<SweepRow>& multi);

/// Shortest decimal form that parses back to the exact double.
std::string format_double(double v);

// Frozen CSV surfaces; downstream plotting relies on the exact headers.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_gain_csv(std::ostream& out, const std::vector<GainRow>& rows);
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
void write_snapshot_csv(std::ostream& out, const NetworkSnapshot& snapshot);

// Everything needed to reproduce a run bit-for-bit, serialized as JSON next
// to the outputs.
struct RunManifest {
    std::string mode = "compare";        // analytic | simulate | compare
    SystemConfig config;
    SolverOptions solver;
    SweepSpec sweep;
    RunOptions run;
    std::string out_path;
    std::string gain_out_path;
    std::string trace_out_path;
    long trace_row_limit = 0;
    std::string snapshot_out_path;
};

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& json_text);

}  // namespace mcv2x
