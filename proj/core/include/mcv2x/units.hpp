#pragma once

namespace mcv2x {

/// dBm -> watts: 10^((p-30)/10). Throws std::invalid_argument on non-finite input.
double dbm_to_watts(double dbm);

/// dB -> linear power ratio: 10^(v/10). Throws std::invalid_argument on non-finite input.
double db_to_linear(double db);

/// Linear power ratio -> dB. Input must be > 0.
double linear_to_db(double linear);

// Intensity of a point process after absorbing log-normal shadowing into a
// random displacement of each point: density * E[chi^(-1/alpha)] where
// 10*log10(chi) ~ N(shadow_mean_db, shadow_std_db^2). Unit-preserving
// (nodes/km in -> nodes/km out).
double displaced_intensity(double density, double alpha, double shadow_mean_db,
                           double shadow_std_db);

}  // namespace mcv2x
