#include "mcv2x/units.hpp"

#include <cmath>
#include <stdexcept>

namespace mcv2x {

namespace {
constexpr double kLn10 = 2.302585092994045684017991454684;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}
}  // namespace

double dbm_to_watts(double dbm) {
    require_finite(dbm, "dBm value");
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double db_to_linear(double db) {
    require_finite(db, "dB value");
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear) {
    if (!(linear > 0.0)) throw std::invalid_argument("linear value must be > 0");
    return 10.0 * std::log10(linear);
}

double displaced_intensity(double density, double alpha, double shadow_mean_db,
                           double shadow_std_db) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    if (!(density > 0.0)) throw std::invalid_argument("density must be > 0");
    if (shadow_std_db < 0.0) throw std::invalid_argument("shadow std must be >= 0");
    const double a = shadow_mean_db * kLn10 / (10.0 * alpha);
    const double b = shadow_std_db * kLn10 / (10.0 * alpha);
    return density * std::exp(a + 0.5 * b * b);
}

}  // namespace mcv2x
