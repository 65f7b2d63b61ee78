#include "mcv2x/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcv2x/errors.hpp"
#include "mcv2x/parallel.hpp"
#include "mcv2x/units.hpp"

namespace mcv2x {

const char* to_string(DeploymentVariant variant) {
    switch (variant) {
        case DeploymentVariant::physical_shadowing: return "physical";
        case DeploymentVariant::displaced_intensity: return "displaced";
    }
    return "unknown";
}

namespace {

// Substream purposes under each (iteration, attempt) stream.
constexpr std::uint64_t kPurposeDbs = 0;
constexpr std::uint64_t kPurposeVehicles = 1;
constexpr std::uint64_t kPurposeShadow = 2;
constexpr std::uint64_t kPurposeFading = 3;

constexpr double kLn10Over10 = 0.23025850929940457;

struct IterationScratch {
    std::vector<double> longterm;   // ranking key per station
    std::vector<double> power;      // P * g * chi * x^-alpha per station
    std::vector<std::size_t> top;   // indices of the best max_order stations
    std::vector<double> vehicles;
};

struct Deployment {
    std::vector<double> dbs;
    std::vector<double> vehicles;  // origin included, sorted
};

Deployment draw_deployment(const Scenario& sc, double deploy_density, RngStream iter_stream) {
    Deployment d;
    RngStream s_dbs = iter_stream.child(kPurposeDbs);
    d.dbs = sample_ppp_interval(deploy_density, sc.road_length_m, s_dbs);
    RngStream s_veh = iter_stream.child(kPurposeVehicles);
    d.vehicles = sample_ppp_interval(sc.lambda_vehicle_per_m, sc.road_length_m, s_veh);
    d.vehicles.insert(std::lower_bound(d.vehicles.begin(), d.vehicles.end(), 0.0), 0.0);
    return d;
}

void rank_top(const std::vector<double>& longterm, int m, std::vector<std::size_t>& top) {
    // selection of the m largest keys, best first; ties broken by index
    top.clear();
    for (std::size_t i = 0; i < longterm.size(); ++i) {
        const double key = longterm[i];
        auto pos = top.begin();
        while (pos != top.end() && longterm[*pos] >= key) ++pos;
        if (pos == top.end()) {
            if (top.size() < static_cast<std::size_t>(m)) top.push_back(i);
        } else {
            top.insert(pos, i);
            if (top.size() > static_cast<std::size_t>(m)) top.pop_back();
        }
    }
}

}  // namespace

std::vector<std::size_t> associate(double vehicle_pos, std::span<const double> dbs_positions,
                                   std::span<const double> shadow_gains, double alpha,
                                   double antenna_height, int m) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (dbs_positions.size() < static_cast<std::size_t>(m))
        throw SimulationError("fewer base stations than the connectivity order");
    if (!shadow_gains.empty() && shadow_gains.size() != dbs_positions.size())
        throw std::invalid_argument("shadow_gains size mismatch");
    std::vector<double> longterm(dbs_positions.size());
    const double h2 = antenna_height * antenna_height;
    for (std::size_t i = 0; i < dbs_positions.size(); ++i) {
        const double r = dbs_positions[i] - vehicle_pos;
        const double x2 = r * r + h2;
        const double chi = shadow_gains.empty() ? 1.0 : shadow_gains[i];
        longterm[i] = chi * std::pow(x2, -0.5 * alpha);
    }
    std::vector<std::size_t> top;
    rank_top(longterm, m, top);
    return top;
}

double sinr_for_vehicle(double vehicle_pos, std::span<const std::size_t> cooperating,
                        std::span<const double> dbs_positions, std::span<const double> fading,
                        std::span<const double> shadow_gains, const Scenario& sc) {
    if (fading.size() != dbs_positions.size() || shadow_gains.size() != dbs_positions.size())
        throw std::invalid_argument("per-link vector size mismatch");
    const double h2 = sc.antenna_height_m * sc.antenna_height_m;
    double total = 0.0;
    for (std::size_t i = 0; i < dbs_positions.size(); ++i) {
        const double r = dbs_positions[i] - vehicle_pos;
        const double x2 = r * r + h2;
        total += sc.tx_power_w * fading[i] * shadow_gains[i] * std::pow(x2, -0.5 * sc.alpha);
    }
    double signal = 0.0;
    for (std::size_t idx : cooperating) {
        const double r = dbs_positions[idx] - vehicle_pos;
        const double x2 = r * r + h2;
        signal += sc.tx_power_w * fading[idx] * shadow_gains[idx] * std::pow(x2, -0.5 * sc.alpha);
    }
    return signal / (total - signal + sc.noise_w);
}

NetworkSnapshot make_snapshot(const SimulationSpec& spec) {
    const Scenario sc = make_scenario(spec.config);
    const double density = spec.variant == DeploymentVariant::physical_shadowing
                               ? sc.lambda_dbs_per_m
                               : sc.lambda_dbs_displaced_per_m;
    const RngStream root = RngStream::from_seed(spec.master_seed);
    Deployment d = draw_deployment(sc, density, root.child(0).child(0));
    NetworkSnapshot snap;
    snap.dbs_positions = std::move(d.dbs);
    snap.vehicle_positions = std::move(d.vehicles);
    return snap;
}

SimulationResult simulate(const SimulationSpec& spec) {
    const Scenario sc = make_scenario(spec.config);
    if (spec.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (spec.connectivity_orders.empty())
        throw std::invalid_argument("need at least one connectivity order");
    if (spec.guard_band_km < 0.0 || spec.guard_band_km * 1e3 >= 0.5 * sc.road_length_m)
        throw std::invalid_argument("guard band must lie within half the road length");
    if (spec.thresholds_db.empty()) throw std::invalid_argument("need at least one threshold");

    std::vector<int> orders = spec.connectivity_orders;
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
    if (orders.front() < 1) throw std::invalid_argument("connectivity orders must be >= 1");
    const int max_order = orders.back();
    const auto n_orders = orders.size();

    std::vector<double> t_linear(spec.thresholds_db.size());
    for (std::size_t i = 0; i < t_linear.size(); ++i)
        t_linear[i] = db_to_linear(spec.thresholds_db[i]);
    const double cfg_t_linear = db_to_linear(spec.config.threshold_db);
    const auto n_t = t_linear.size();

    const double deploy_density = spec.variant == DeploymentVariant::physical_shadowing
                                      ? sc.lambda_dbs_per_m
                                      : sc.lambda_dbs_displaced_per_m;
    const bool draw_shadows = spec.variant == DeploymentVariant::physical_shadowing &&
                              (sc.shadow_std_db > 0.0 || sc.shadow_mean_db != 0.0);
    const double eval_half_span = 0.5 * sc.road_length_m - spec.guard_band_km * 1e3;

    const long n_iter = spec.iterations;
    // per-iteration vehicle means, written by iteration index and reduced
    // serially afterwards so thread count cannot perturb the result
    std::vector<double> cov_mean(static_cast<std::size_t>(n_iter) * n_orders * n_t);
    std::vector<double> se_mean(static_cast<std::size_t>(n_iter) * n_orders);
    std::vector<std::uint8_t> resampled(static_cast<std::size_t>(n_iter), 0);

    // trace rows come from a deterministic prefix of iterations
    long trace_iters = 0;
    if (spec.trace_row_limit > 0) {
        const double expected_rows =
            std::max(1.0, sc.lambda_vehicle_per_m * sc.road_length_m) * static_cast<double>(n_orders);
        trace_iters = std::min<long>(
            n_iter, static_cast<long>(static_cast<double>(spec.trace_row_limit) / expected_rows) + 1);
    }
    std::vector<std::vector<TraceRow>> trace_per_iter(static_cast<std::size_t>(trace_iters));

    const RngStream root = RngStream::from_seed(spec.master_seed);

    parallel_chunks(n_iter, 8, [&](std::int64_t begin, std::int64_t end, std::int64_t) {
        IterationScratch ws;
        for (std::int64_t iter = begin; iter < end; ++iter) {
            bool valid = false;
            for (int attempt = 0; attempt < spec.max_resample_attempts; ++attempt) {
                const RngStream iter_stream =
                    root.child(static_cast<std::uint64_t>(iter)).child(
                        static_cast<std::uint64_t>(attempt));
                Deployment dep = draw_deployment(sc, deploy_density, iter_stream);
                if (dep.dbs.size() < static_cast<std::size_t>(max_order)) {
                    resampled[static_cast<std::size_t>(iter)] = 1;
                    continue;
                }
                long evaluated = 0;
                std::vector<double> cov_sum(n_orders * n_t, 0.0);
                std::vector<double> se_sum(n_orders, 0.0);
                const auto n_dbs = dep.dbs.size();
                ws.longterm.resize(n_dbs);
                ws.power.resize(n_dbs);
                const double h2 = sc.antenna_height_m * sc.antenna_height_m;

                for (std::size_t v = 0; v < dep.vehicles.size(); ++v) {
                    const double pos = dep.vehicles[v];
                    if (std::fabs(pos) > eval_half_span) continue;
                    RngStream shadow_stream = iter_stream.child(kPurposeShadow, v);
                    RngStream fading_stream = iter_stream.child(kPurposeFading, v);
                    double total_power = 0.0;
                    for (std::size_t d = 0; d < n_dbs; ++d) {
                        const double r = dep.dbs[d] - pos;
                        const double x2 = r * r + h2;
                        const double pathloss = std::pow(x2, -0.5 * sc.alpha);
                        double chi = 1.0;
                        if (draw_shadows) {
                            const double z =
                                shadow_stream.normal(sc.shadow_mean_db, sc.shadow_std_db);
                            chi = std::exp(z * kLn10Over10);
                        }
                        const double g = fading_stream.exponential(sc.mu);
                        ws.longterm[d] = chi * pathloss;
                        ws.power[d] = sc.tx_power_w * g * chi * pathloss;
                        total_power += ws.power[d];
                    }
                    rank_top(ws.longterm, max_order, ws.top);
                    ++evaluated;

                    double signal = 0.0;
                    std::size_t rank = 0;
                    std::size_t order_idx = 0;
                    for (int m = 1; m <= max_order && order_idx < n_orders; ++m) {
                        signal += ws.power[ws.top[rank++]];
                        if (m != orders[order_idx]) continue;
                        const double interference = total_power - signal;
                        const double sinr = signal / (interference + sc.noise_w);
                        for (std::size_t ti = 0; ti < n_t; ++ti)
                            cov_sum[order_idx * n_t + ti] += sinr > t_linear[ti] ? 1.0 : 0.0;
                        se_sum[order_idx] += std::log1p(sinr);
                        if (iter < trace_iters) {
                            trace_per_iter[static_cast<std::size_t>(iter)].push_back(
                                TraceRow{iter, pos * 1e-3, orders[order_idx],
                                         10.0 * std::log10(sinr), sinr > cfg_t_linear});
                        }
                        ++order_idx;
                    }
                }
                if (evaluated == 0) {
                    resampled[static_cast<std::size_t>(iter)] = 1;
                    continue;
                }
                const double inv = 1.0 / static_cast<double>(evaluated);
                for (std::size_t oi = 0; oi < n_orders; ++oi) {
                    se_mean[static_cast<std::size_t>(iter) * n_orders + oi] = se_sum[oi] * inv;
                    for (std::size_t ti = 0; ti < n_t; ++ti)
                        cov_mean[(static_cast<std::size_t>(iter) * n_orders + oi) * n_t + ti] =
                            cov_sum[oi * n_t + ti] * inv;
                }
                valid = true;
                break;
            }
            if (!valid)
                throw SimulationError(
                    "resample budget exhausted: deployment cannot support the requested "
                    "connectivity order (density too low for the road length?)");
        }
    });

    SimulationResult out;
    out.thresholds_db = spec.thresholds_db;
    out.iterations_used = n_iter;
    out.seed = spec.master_seed;
    for (const auto flag : resampled) out.resampled_iterations += flag;

    out.per_order.resize(n_orders);
    for (std::size_t oi = 0; oi < n_orders; ++oi) {
        OrderResult& res = out.per_order[oi];
        res.order = orders[oi];
        res.coverage.resize(n_t);
        res.coverage_stderr.resize(n_t);
        for (std::size_t ti = 0; ti < n_t; ++ti) {
            double mean = 0.0, m2 = 0.0;
            for (long i = 0; i < n_iter; ++i) {
                const double x = cov_mean[(static_cast<std::size_t>(i) * n_orders + oi) * n_t + ti];
                const double d = x - mean;
                mean += d / static_cast<double>(i + 1);
                m2 += d * (x - mean);
            }
            res.coverage[ti] = mean;
            res.coverage_stderr[ti] =
                n_iter > 1 ? std::sqrt(m2 / static_cast<double>(n_iter - 1) /
                                       static_cast<double>(n_iter))
                           : 0.0;
        }
        double mean = 0.0, m2 = 0.0;
        for (long i = 0; i < n_iter; ++i) {
            const double x = se_mean[static_cast<std::size_t>(i) * n_orders + oi];
            const double d = x - mean;
            mean += d / static_cast<double>(i + 1);
            m2 += d * (x - mean);
        }
        res.spectral_efficiency = mean;
        res.se_stderr = n_iter > 1 ? std::sqrt(m2 / static_cast<double>(n_iter - 1) /
                                               static_cast<double>(n_iter))
                                   : 0.0;
    }

    if (trace_iters > 0) {
        for (auto& rows : trace_per_iter) {
            for (auto& row : rows) {
                if (static_cast<long>(out.trace.size()) >= spec.trace_row_limit) break;
                out.trace.push_back(row);
            }
        }
    }
    return out;
}

}  // namespace mcv2x
