#pragma once

#include <vector>

#include "mcv2x/rng.hpp"

namespace mcv2x {

/// Strictly increasing link distances from the typical vehicle to its
/// nearest base stations (any consistent length unit).
struct OrderedDistances {
    std::vector<double> distances;
};

// One realized deployment. Positions live on [-length/2, length/2];
// vehicle_positions includes the typical vehicle at the origin.
// shadow_gains is row-major per (vehicle, base station) when drawn eagerly.
struct NetworkSnapshot {
    std::vector<double> dbs_positions;
    std::vector<double> vehicle_positions;
    std::vector<double> shadow_gains;
};

// Homogeneous PPP on [-length/2, length/2], sampled as sorted exponential
// gaps (count is Poisson(density*length), positions i.i.d. uniform).
std::vector<double> sample_ppp_interval(double density, double length, RngStream& rng);

// Distances from the origin to the m nearest points of a two-sided 1-D PPP:
// cumulative sums of i.i.d. Exponential(2*effective_rate) gaps. Exact and
// free of window truncation, so tail integrals to infinity stay unbiased.
OrderedDistances sample_ordered_distances(double effective_rate, int m, RngStream& rng);

/// Shadowing absorbed into geometry: returns shadow_gain^(-1/alpha) * distance.
double apply_displacement(double distance, double shadow_gain, double alpha);

/// Log-normal shadowing gain: 10^(Z/10), Z ~ Normal(mean_db, std_db^2).
double draw_shadow_gain(double shadow_mean_db, double shadow_std_db, RngStream& rng);

}  // namespace mcv2x
