#include "mcv2x/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mcv2x/errors.hpp"
#include "mcv2x/units.hpp"

#include <json.hpp>

namespace mcv2x {

namespace {

using nlohmann::json;

void check(std::vector<Violation>& out, bool ok, const char* field, const std::string& msg) {
    if (!ok) out.push_back({field, msg});
}

double get_number(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ConfigError(field, "missing required field");
    const auto& v = j.at(field);
    if (!v.is_number()) throw ConfigError(field, "expected a number");
    return v.get<double>();
}

int get_int(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ConfigError(field, "missing required field");
    const auto& v = j.at(field);
    if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
    return v.get<int>();
}

}  // namespace

std::vector<Violation> validate(const SystemConfig& cfg) {
    std::vector<Violation> v;
    check(v, std::isfinite(cfg.tx_power_dbm), "tx_power_dbm", "must be finite");
    check(v, cfg.pathloss_exponent > 2.0, "pathloss_exponent", "must be > 2");
    check(v, std::isfinite(cfg.noise_power_dbm), "noise_power_dbm", "must be finite");
    check(v, cfg.fading_rate > 0.0, "fading_rate", "must be > 0");
    check(v, std::isfinite(cfg.shadow_mean_db), "shadow_mean_db", "must be finite");
    check(v, cfg.shadow_std_db >= 0.0, "shadow_std_db", "must be >= 0");
    check(v, cfg.antenna_height_m >= 0.0, "antenna_height_m", "must be >= 0");
    check(v, cfg.dbs_density_per_km > 0.0, "dbs_density_per_km", "must be > 0");
    check(v, cfg.cbs_density_per_km > 0.0, "cbs_density_per_km", "must be > 0");
    check(v, cfg.vehicle_density_per_km > 0.0, "vehicle_density_per_km", "must be > 0");
    check(v, cfg.road_length_km > 0.0, "road_length_km", "must be > 0");
    check(v, cfg.connectivity_order >= 1, "connectivity_order", "must be >= 1");
    check(v, std::isfinite(cfg.threshold_db), "threshold_db", "must be finite");
    return v;
}

std::vector<Violation> validate(const SolverOptions& s) {
    std::vector<Violation> v;
    check(v, s.rel_tol > 0.0, "solver.rel_tol", "must be > 0");
    check(v, s.abs_tol > 0.0, "solver.abs_tol", "must be > 0");
    check(v, s.distance_samples >= 1, "solver.distance_samples", "must be >= 1");
    check(v, s.mc_iterations >= 1, "solver.mc_iterations", "must be >= 1");
    const auto& p = s.t_integral_cutoff_policy;
    bool policy_ok = p == "adaptive";
    if (p.rfind("fixed:", 0) == 0) {
        try {
            policy_ok = std::stod(p.substr(6)) > 0.0;
        } catch (const std::exception&) {
            policy_ok = false;
        }
    }
    check(v, policy_ok, "solver.t_integral_cutoff_policy", "must be \"adaptive\" or \"fixed:<T>\"");
    return v;
}

LoadedConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("", "config root must be an object");

    static const std::set<std::string> system_keys = {
        "tx_power_dbm",      "pathloss_exponent",     "noise_power_dbm",
        "fading_rate",       "shadow_mean_db",        "shadow_std_db",
        "antenna_height_m",  "dbs_density_per_km",    "cbs_density_per_km",
        "vehicle_density_per_km", "road_length_km",   "connectivity_order",
        "threshold_db",      "solver"};
    for (const auto& item : j.items()) {
        if (!system_keys.count(item.key())) throw ConfigError(item.key(), "unknown key");
    }

    LoadedConfig out;
    out.system.tx_power_dbm = get_number(j, "tx_power_dbm");
    out.system.pathloss_exponent = get_number(j, "pathloss_exponent");
    out.system.noise_power_dbm = get_number(j, "noise_power_dbm");
    out.system.fading_rate = get_number(j, "fading_rate");
    out.system.shadow_mean_db = get_number(j, "shadow_mean_db");
    out.system.shadow_std_db = get_number(j, "shadow_std_db");
    out.system.antenna_height_m = get_number(j, "antenna_height_m");
    out.system.dbs_density_per_km = get_number(j, "dbs_density_per_km");
    out.system.cbs_density_per_km = get_number(j, "cbs_density_per_km");
    out.system.vehicle_density_per_km = get_number(j, "vehicle_density_per_km");
    out.system.road_length_km = get_number(j, "road_length_km");
    out.system.connectivity_order = get_int(j, "connectivity_order");
    out.system.threshold_db = get_number(j, "threshold_db");

    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        if (!s.is_object()) throw ConfigError("solver", "must be an object");
        static const std::set<std::string> solver_keys = {
            "rel_tol", "abs_tol", "distance_samples", "mc_iterations",
            "t_integral_cutoff_policy", "nested_quadrature_m2"};
        for (const auto& item : s.items()) {
            if (!solver_keys.count(item.key()))
                throw ConfigError("solver." + item.key(), "unknown key");
        }
        if (s.contains("rel_tol")) out.solver.rel_tol = s.at("rel_tol").get<double>();
        if (s.contains("abs_tol")) out.solver.abs_tol = s.at("abs_tol").get<double>();
        if (s.contains("distance_samples"))
            out.solver.distance_samples = s.at("distance_samples").get<int>();
        if (s.contains("mc_iterations"))
            out.solver.mc_iterations = s.at("mc_iterations").get<int>();
        if (s.contains("t_integral_cutoff_policy"))
            out.solver.t_integral_cutoff_policy =
                s.at("t_integral_cutoff_policy").get<std::string>();
        if (s.contains("nested_quadrature_m2"))
            out.solver.nested_quadrature_m2 = s.at("nested_quadrature_m2").get<bool>();
    }
    return out;
}

LoadedConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const SystemConfig& cfg, const SolverOptions& solver) {
    json j;
    j["tx_power_dbm"] = cfg.tx_power_dbm;
    j["pathloss_exponent"] = cfg.pathloss_exponent;
    j["noise_power_dbm"] = cfg.noise_power_dbm;
    j["fading_rate"] = cfg.fading_rate;
    j["shadow_mean_db"] = cfg.shadow_mean_db;
    j["shadow_std_db"] = cfg.shadow_std_db;
    j["antenna_height_m"] = cfg.antenna_height_m;
    j["dbs_density_per_km"] = cfg.dbs_density_per_km;
    j["cbs_density_per_km"] = cfg.cbs_density_per_km;
    j["vehicle_density_per_km"] = cfg.vehicle_density_per_km;
    j["road_length_km"] = cfg.road_length_km;
    j["connectivity_order"] = cfg.connectivity_order;
    j["threshold_db"] = cfg.threshold_db;
    j["solver"] = {
        {"rel_tol", solver.rel_tol},
        {"abs_tol", solver.abs_tol},
        {"distance_samples", solver.distance_samples},
        {"mc_iterations", solver.mc_iterations},
        {"t_integral_cutoff_policy", solver.t_integral_cutoff_policy},
        {"nested_quadrature_m2", solver.nested_quadrature_m2},
    };
    return j.dump(2);
}

Scenario make_scenario(const SystemConfig& cfg) {
    const auto violations = validate(cfg);
    if (!violations.empty()) {
        throw std::invalid_argument("invalid SystemConfig: " + violations.front().field + " " +
                                    violations.front().message);
    }
    constexpr double kPerKmToPerM = 1e-3;
    constexpr double kKmToM = 1e3;
    Scenario s{};
    s.tx_power_w = dbm_to_watts(cfg.tx_power_dbm);
    s.noise_w = dbm_to_watts(cfg.noise_power_dbm);
    s.alpha = cfg.pathloss_exponent;
    s.mu = cfg.fading_rate;
    s.shadow_mean_db = cfg.shadow_mean_db;
    s.shadow_std_db = cfg.shadow_std_db;
    s.antenna_height_m = cfg.antenna_height_m;
    s.lambda_dbs_per_m = cfg.dbs_density_per_km * kPerKmToPerM;
    s.lambda_cbs_per_m = cfg.cbs_density_per_km * kPerKmToPerM;
    s.lambda_vehicle_per_m = cfg.vehicle_density_per_km * kPerKmToPerM;
    s.lambda_dbs_displaced_per_m = displaced_intensity(
        s.lambda_dbs_per_m, s.alpha, cfg.shadow_mean_db, cfg.shadow_std_db);
    s.lambda_cbs_displaced_per_m = displaced_intensity(
        s.lambda_cbs_per_m, s.alpha, cfg.shadow_mean_db, cfg.shadow_std_db);
    s.road_length_m = cfg.road_length_km * kKmToM;
    s.connectivity_order = cfg.connectivity_order;
    s.threshold_linear = db_to_linear(cfg.threshold_db);
    return s;
}

}  // namespace mcv2x
