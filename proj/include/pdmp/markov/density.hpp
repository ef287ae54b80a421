#pragma once

#include <vector>

#include "pdmp/core/grid_density.hpp"
#include "pdmp/markov/event_log.hpp"
#include "pdmp/markov/potential.hpp"

namespace pdmp::markov {

/// Adds the sojourn time of the flight x(s) = x0 + velocity*s, s in [0, tau],
/// to `masses`. Cell k is centred on node k: [node_k - h/2, node_k + h/2).
/// Crossing times are computed exactly; total deposit is tau.
void deposit_arc(std::vector<double>& masses, const PeriodicGrid& grid, double x0,
                 double velocity, double tau);

/// Time spent by the trajectory in each cell of `grid`; sums to t_final.
std::vector<double> sojourn_masses(const TelegraphLog& log, const PeriodicGrid& grid);

/// Sojourn masses of coordinate `axis` of a torus trajectory.
std::vector<double> sojourn_masses(const TorusVJPLog& log, const PeriodicGrid& grid, std::size_t axis);

/// Joint sojourn masses on a cells_per_dim^d product grid (row-major,
/// axis 0 slowest). Cells start at 0: [k h, (k+1) h).
std::vector<double> joint_sojourn_masses(const TorusVJPLog& log, std::size_t cells_per_dim);

/// exp(-V) normalized on the grid. V is shifted by its grid minimum first.
GridDensity invariant_density(const FrozenPotential& pot, const PeriodicGrid& grid);
GridDensity invariant_density(const ScalarFn& V, const PeriodicGrid& grid);

/// Empirical occupation density of the trajectory (sojourn mass / (t h)).
GridDensity empirical_density(const TelegraphLog& log, const PeriodicGrid& grid);

/// Total variation 1/2 sum_k |empirical_k - target_k h| between the
/// time-weighted occupation of the trajectory and `target`.
double empirical_tv(const TelegraphLog& log, const GridDensity& target);

/// Same, for raw cell masses (normalized internally) against a density.
double tv_from_masses(const std::vector<double>& masses, const GridDensity& target);

/// Fraction of time with y = +1.
double positive_velocity_fraction(const TelegraphLog& log);

}  // namespace pdmp::markov
