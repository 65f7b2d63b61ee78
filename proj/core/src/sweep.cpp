#include "mcv2x/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mcv2x/analytic.hpp"
#include "mcv2x/errors.hpp"
#include "mcv2x/rng.hpp"
#include "mcv2x/units.hpp"
#include "mcv2x/version.hpp"

#include <json.hpp>

namespace mcv2x {

namespace {

using nlohmann::json;

constexpr const char* kCoverage = "coverage";
constexpr const char* kSpectralEfficiency = "spectral_efficiency";

// engine sub-seed tags
constexpr std::uint64_t kAnalyticTag = 0xA11A;
constexpr std::uint64_t kSimTag = 0x51D0;

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return RngStream::from_seed(master).child(a, b).next_u64();
}

std::vector<double> linspace(double start, double stop, int steps) {
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        grid[static_cast<std::size_t>(i)] =
            start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return grid;
}

void set_parameter(SystemConfig& cfg, SweepParameter parameter, double value) {
    switch (parameter) {
        case SweepParameter::threshold_db: cfg.threshold_db = value; return;
        case SweepParameter::pathloss_exponent: cfg.pathloss_exponent = value; return;
        case SweepParameter::dbs_density_per_km: cfg.dbs_density_per_km = value; return;
    }
    throw std::invalid_argument("unknown sweep parameter");
}

SystemConfig cbs_tier_config(const SystemConfig& cfg) {
    SystemConfig single = cfg;
    single.dbs_density_per_km = cfg.cbs_density_per_km;
    single.connectivity_order = 1;
    return single;
}

struct EnginePair {
    std::optional<double> analytic_value, analytic_err;
    std::optional<double> simulated_value, simulated_stderr;
};

SweepRow make_row(double value, int order, const char* metric, const EnginePair& pair,
                  long iterations, std::uint64_t seed) {
    SweepRow row;
    row.parameter_value = value;
    row.order_m = order;
    row.metric_name = metric;
    row.analytic_value = pair.analytic_value;
    row.analytic_err = pair.analytic_err;
    row.simulated_value = pair.simulated_value;
    row.simulated_stderr = pair.simulated_stderr;
    row.iterations = iterations;
    row.seed = seed;
    return row;
}

}  // namespace

const char* to_string(SweepParameter parameter) {
    switch (parameter) {
        case SweepParameter::threshold_db: return "threshold_db";
        case SweepParameter::pathloss_exponent: return "pathloss_exponent";
        case SweepParameter::dbs_density_per_km: return "dbs_density_per_km";
    }
    return "unknown";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
    if (name == "threshold_db") return SweepParameter::threshold_db;
    if (name == "pathloss_exponent") return SweepParameter::pathloss_exponent;
    if (name == "dbs_density_per_km") return SweepParameter::dbs_density_per_km;
    return std::nullopt;
}

std::vector<Violation> validate(const SweepSpec& sweep) {
    std::vector<Violation> v;
    if (!(sweep.start < sweep.stop)) v.push_back({"sweep.start", "must be < stop"});
    if (sweep.steps < 2) v.push_back({"sweep.steps", "must be >= 2"});
    if (sweep.orders.empty()) v.push_back({"sweep.orders", "must be nonempty"});
    for (int order : sweep.orders)
        if (order < 1) v.push_back({"sweep.orders", "orders must be >= 1"});
    if (!sweep.run_analytic && !sweep.run_simulation)
        v.push_back({"sweep.engines", "at least one engine must run"});
    return v;
}

std::vector<SweepRow> run_sweep(const SystemConfig& cfg, const SolverOptions& solver,
                                const SweepSpec& sweep, const RunOptions& run) {
    for (const auto& violation : validate(cfg))
        throw ConfigError(violation.field, violation.message);
    for (const auto& violation : validate(solver))
        throw ConfigError(violation.field, violation.message);
    for (const auto& violation : validate(sweep))
        throw ConfigError(violation.field, violation.message);

    std::vector<int> orders = sweep.orders;
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
    std::vector<int> multi_orders;
    for (int order : orders)
        if (order >= 2) multi_orders.push_back(order);
    const bool want_single = orders.front() == 1;

    const std::vector<double> grid = linspace(sweep.start, sweep.stop, sweep.steps);
    const int iterations = run.iterations > 0 ? run.iterations : solver.mc_iterations;

    std::vector<SweepRow> rows;

    if (sweep.parameter == SweepParameter::threshold_db) {
        // One shared evaluation per tier: thresholds only re-slice the same
        // SINR population, so the whole grid reuses one simulation pass and
        // one distance-sample set.
        std::vector<double> t_linear(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) t_linear[i] = db_to_linear(grid[i]);

        std::map<int, std::vector<MetricEstimate>> analytic;  // order -> per grid point
        if (sweep.run_analytic) {
            const Scenario sc = make_scenario(cfg);
            const Scenario sc_single = make_scenario(cbs_tier_config(cfg));
            for (int order : orders) {
                if (order == 1) {
                    std::vector<MetricEstimate> curve;
                    curve.reserve(grid.size());
                    for (double t : t_linear)
                        curve.push_back(single_coverage(sc_single, t, solver));
                    analytic[1] = std::move(curve);
                } else {
                    analytic[order] = coverage_curve(
                        sc, order, t_linear, solver,
                        derive_seed(run.master_seed, kAnalyticTag, static_cast<std::uint64_t>(order)));
                }
            }
        }

        std::map<int, std::pair<const OrderResult*, std::uint64_t>> simulated;
        SimulationResult sim_multi, sim_single;
        if (sweep.run_simulation) {
            if (!multi_orders.empty()) {
                SimulationSpec spec;
                spec.config = cfg;
                spec.iterations = iterations;
                spec.master_seed = derive_seed(run.master_seed, kSimTag, 0);
                spec.variant = run.variant;
                spec.guard_band_km = run.guard_band_km;
                spec.connectivity_orders = multi_orders;
                spec.thresholds_db = grid;
                sim_multi = simulate(spec);
                for (const auto& order_result : sim_multi.per_order)
                    simulated[order_result.order] = {&order_result, sim_multi.seed};
            }
            if (want_single) {
                SimulationSpec spec;
                spec.config = cbs_tier_config(cfg);
                spec.iterations = iterations;
                spec.master_seed = derive_seed(run.master_seed, kSimTag, 1);
                spec.variant = run.variant;
                spec.guard_band_km = run.guard_band_km;
                spec.connectivity_orders = {1};
                spec.thresholds_db = grid;
                sim_single = simulate(spec);
                simulated[1] = {&sim_single.per_order.front(), sim_single.seed};
            }
        }

        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (int order : orders) {
                EnginePair pair;
                std::uint64_t seed = run.master_seed;
                if (sweep.run_analytic) {
                    const MetricEstimate& est = analytic.at(order)[i];
                    pair.analytic_value = est.value;
                    pair.analytic_err = est.std_error;
                    if (est.seed) seed = *est.seed;
                }
                if (sweep.run_simulation) {
                    const auto& [order_result, sim_seed] = simulated.at(order);
                    pair.simulated_value = order_result->coverage[i];
                    pair.simulated_stderr = order_result->coverage_stderr[i];
                    seed = sim_seed;
                }
                rows.push_back(make_row(grid[i], order, kCoverage, pair,
                                        sweep.run_simulation ? iterations : 0, seed));
            }
        }
        return rows;
    }

    // Per-point sweeps: every point re-derives the scenario (and with it the
    // displaced intensity) and gets its own seed.
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SystemConfig point_cfg = cfg;
        set_parameter(point_cfg, sweep.parameter, grid[i]);
        const std::uint64_t point_seed = derive_seed(run.master_seed, 7, i);

        std::map<int, EnginePair> coverage_pairs, se_pairs;
        std::map<int, std::uint64_t> row_seed;
        for (int order : orders) row_seed[order] = point_seed;

        if (sweep.run_analytic) {
            const Scenario sc = make_scenario(point_cfg);
            const Scenario sc_single = make_scenario(cbs_tier_config(point_cfg));
            for (int order : orders) {
                MetricEstimate cov, se;
                if (order == 1) {
                    cov = single_coverage(sc_single, sc_single.threshold_linear, solver);
                    se = single_spectral_efficiency(sc_single, solver);
                } else {
                    const std::uint64_t seed =
                        derive_seed(point_seed, kAnalyticTag, static_cast<std::uint64_t>(order));
                    cov = coverage_probability(sc, order, sc.threshold_linear, solver, seed);
                    se = spectral_efficiency(sc, order, solver, seed);
                    row_seed[order] = seed;
                }
                coverage_pairs[order].analytic_value = cov.value;
                coverage_pairs[order].analytic_err = cov.std_error;
                se_pairs[order].analytic_value = se.value;
                se_pairs[order].analytic_err = se.std_error;
            }
        }

        if (sweep.run_simulation) {
            auto run_sim = [&](const SystemConfig& sim_cfg, const std::vector<int>& sim_orders,
                               std::uint64_t seed) {
                SimulationSpec spec;
                spec.config = sim_cfg;
                spec.iterations = iterations;
                spec.master_seed = seed;
                spec.variant = run.variant;
                spec.guard_band_km = run.guard_band_km;
                spec.connectivity_orders = sim_orders;
                spec.thresholds_db = {sim_cfg.threshold_db};
                return simulate(spec);
            };
            if (!multi_orders.empty()) {
                const std::uint64_t seed = derive_seed(point_seed, kSimTag, 0);
                const SimulationResult sim = run_sim(point_cfg, multi_orders, seed);
                for (const auto& order_result : sim.per_order) {
                    coverage_pairs[order_result.order].simulated_value = order_result.coverage[0];
                    coverage_pairs[order_result.order].simulated_stderr =
                        order_result.coverage_stderr[0];
                    se_pairs[order_result.order].simulated_value =
                        order_result.spectral_efficiency;
                    se_pairs[order_result.order].simulated_stderr = order_result.se_stderr;
                    row_seed[order_result.order] = seed;
                }
            }
            if (want_single) {
                const std::uint64_t seed = derive_seed(point_seed, kSimTag, 1);
                const SimulationResult sim = run_sim(cbs_tier_config(point_cfg), {1}, seed);
                coverage_pairs[1].simulated_value = sim.per_order.front().coverage[0];
                coverage_pairs[1].simulated_stderr = sim.per_order.front().coverage_stderr[0];
                se_pairs[1].simulated_value = sim.per_order.front().spectral_efficiency;
                se_pairs[1].simulated_stderr = sim.per_order.front().se_stderr;
                row_seed[1] = seed;
            }
        }

        const long iter_count = sweep.run_simulation ? iterations : 0;
        for (int order : orders) {
            rows.push_back(make_row(grid[i], order, kCoverage, coverage_pairs[order], iter_count,
                                    row_seed[order]));
            rows.push_back(
                make_row(grid[i], order, kSpectralEfficiency, se_pairs[order], iter_count,
                         row_seed[order]));
        }
    }
    return rows;
}

std::vector<GainRow> gain_report(const std::vector<SweepRow>& baseline,
                                 const std::vector<SweepRow>& multi) {
    auto se_value = [](const SweepRow& row) -> std::optional<double> {
        if (row.metric_name != kSpectralEfficiency) return std::nullopt;
        if (row.analytic_value) return row.analytic_value;
        return row.simulated_value;
    };

    std::map<double, double> base_by_value;
    for (const auto& row : baseline) {
        if (row.order_m != 1) continue;
        if (const auto v = se_value(row)) base_by_value[row.parameter_value] = *v;
    }

    std::vector<GainRow> gains;
    std::vector<double> missing;
    for (const auto& row : multi) {
        if (row.order_m < 2) continue;
        const auto v = se_value(row);
        if (!v) continue;
        const auto base = base_by_value.find(row.parameter_value);
        if (base == base_by_value.end()) {
            missing.push_back(row.parameter_value);
            continue;
        }
        gains.push_back({row.parameter_value, row.order_m,
                         100.0 * (*v - base->second) / base->second});
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "gain_report: baseline grid is missing parameter values:";
        for (double v : missing) msg << " " << format_double(v);
        throw std::invalid_argument(msg.str());
    }
    return gains;
}

std::string format_double(double v) {
    char buf[64];
    for (int digits = 15; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

namespace {
std::string opt_str(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}
}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "parameter_value,order_m,metric_name,analytic_value,analytic_err,"
           "simulated_value,simulated_stderr,iterations,seed\n";
    for (const auto& row : rows) {
        out << format_double(row.parameter_value) << ',' << row.order_m << ','
            << row.metric_name << ',' << opt_str(row.analytic_value) << ','
            << opt_str(row.analytic_err) << ',' << opt_str(row.simulated_value) << ','
            << opt_str(row.simulated_stderr) << ',' << row.iterations << ',' << row.seed
            << '\n';
    }
}

void write_gain_csv(std::ostream& out, const std::vector<GainRow>& rows) {
    out << "parameter_value,order_m,gain_percent\n";
    for (const auto& row : rows)
        out << format_double(row.parameter_value) << ',' << row.order_m << ','
            << format_double(row.gain_percent) << '\n';
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
    out << "iteration,vehicle_pos_km,m,sinr_db,covered_flag\n";
    for (const auto& row : rows)
        out << row.iteration << ',' << format_double(row.vehicle_pos_km) << ',' << row.order
            << ',' << format_double(row.sinr_db) << ',' << (row.covered ? 1 : 0) << '\n';
}

void write_snapshot_csv(std::ostream& out, const NetworkSnapshot& snapshot) {
    out << "entity_type,position_km\n";
    for (double p : snapshot.dbs_positions) out << "dbs," << format_double(p * 1e-3) << '\n';
    for (double p : snapshot.vehicle_positions)
        out << "vehicle," << format_double(p * 1e-3) << '\n';
}

std::string manifest_to_json(const RunManifest& manifest) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["mode"] = manifest.mode;
    j["config"] = json::parse(config_to_json(manifest.config, manifest.solver));
    j["run"] = {
        {"sweep",
         {{"parameter", to_string(manifest.sweep.parameter)},
          {"start", manifest.sweep.start},
          {"stop", manifest.sweep.stop},
          {"steps", manifest.sweep.steps}}},
        {"orders", manifest.sweep.orders},
        {"engines",
         {{"analytic", manifest.sweep.run_analytic},
          {"simulation", manifest.sweep.run_simulation}}},
        {"seed", manifest.run.master_seed},
        {"iterations", manifest.run.iterations},
        {"guard_band_km", manifest.run.guard_band_km},
        {"variant", to_string(manifest.run.variant)},
    };
    j["outputs"] = {
        {"csv", manifest.out_path},
        {"gain_csv", manifest.gain_out_path},
        {"trace_csv", manifest.trace_out_path},
        {"trace_row_limit", manifest.trace_row_limit},
        {"snapshot_csv", manifest.snapshot_out_path},
    };
    return j.dump(2);
}

RunManifest manifest_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid manifest JSON: ") + e.what());
    }
    RunManifest m;
    if (!j.contains("config")) throw ConfigError("config", "missing from manifest");
    const LoadedConfig loaded = parse_config(j.at("config").dump());
    m.config = loaded.system;
    m.solver = loaded.solver;
    m.mode = j.value("mode", "compare");

    const json& run = j.at("run");
    const json& sweep = run.at("sweep");
    const auto parameter = parse_sweep_parameter(sweep.at("parameter").get<std::string>());
    if (!parameter) throw ConfigError("run.sweep.parameter", "unknown sweep parameter");
    m.sweep.parameter = *parameter;
    m.sweep.start = sweep.at("start").get<double>();
    m.sweep.stop = sweep.at("stop").get<double>();
    m.sweep.steps = sweep.at("steps").get<int>();
    m.sweep.orders = run.at("orders").get<std::vector<int>>();
    m.sweep.run_analytic = run.at("engines").at("analytic").get<bool>();
    m.sweep.run_simulation = run.at("engines").at("simulation").get<bool>();
    m.run.master_seed = run.at("seed").get<std::uint64_t>();
    m.run.iterations = run.at("iterations").get<int>();
    m.run.guard_band_km = run.at("guard_band_km").get<double>();
    const std::string variant = run.at("variant").get<std::string>();
    if (variant == "physical")
        m.run.variant = DeploymentVariant::physical_shadowing;
    else if (variant == "displaced")
        m.run.variant = DeploymentVariant::displaced_intensity;
    else
        throw ConfigError("run.variant", "must be \"physical\" or \"displaced\"");

    if (j.contains("outputs")) {
        const json& outputs = j.at("outputs");
        m.out_path = outputs.value("csv", "");
        m.gain_out_path = outputs.value("gain_csv", "");
        m.trace_out_path = outputs.value("trace_csv", "");
        m.trace_row_limit = outputs.value("trace_row_limit", 0L);
        m.snapshot_out_path = outputs.value("snapshot_csv", "");
    }
    return m;
}

}  // namespace mcv2x
