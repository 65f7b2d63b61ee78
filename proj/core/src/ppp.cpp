#include "mcv2x/ppp.hpp"

#include <cmath>
#include <stdexcept>

namespace mcv2x {

std::vector<double> sample_ppp_interval(double density, double length, RngStream& rng) {
    if (!(density > 0.0)) throw std::invalid_argument("density must be > 0");
    if (!(length > 0.0)) throw std::invalid_argument("length must be > 0");
    std::vector<double> points;
    points.reserve(static_cast<std::size_t>(density * length * 1.25) + 4);
    const double half = 0.5 * length;
    double x = -half;
    for (;;) {
        x += rng.exponential(density);
        if (x > half) break;
        points.push_back(x);
    }
    return points;
}

OrderedDistances sample_ordered_distances(double effective_rate, int m, RngStream& rng) {
    if (!(effective_rate > 0.0)) throw std::invalid_argument("effective_rate must be > 0");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    OrderedDistances out;
    out.distances.resize(static_cast<std::size_t>(m));
    double x = 0.0;
    for (int i = 0; i < m; ++i) {
        x += rng.exponential(2.0 * effective_rate);
        out.distances[static_cast<std::size_t>(i)] = x;
    }
    return out;
}

double apply_displacement(double distance, double shadow_gain, double alpha) {
    if (!(distance > 0.0)) throw std::invalid_argument("distance must be > 0");
    if (!(shadow_gain > 0.0)) throw std::invalid_argument("shadow_gain must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    return std::pow(shadow_gain, -1.0 / alpha) * distance;
}

double draw_shadow_gain(double shadow_mean_db, double shadow_std_db, RngStream& rng) {
    if (shadow_std_db < 0.0) throw std::invalid_argument("shadow std must be >= 0");
    if (shadow_std_db == 0.0 && shadow_mean_db == 0.0) return 1.0;
    const double z = rng.normal(shadow_mean_db, shadow_std_db);
    return std::pow(10.0, z / 10.0);
}

}  // namespace mcv2x
