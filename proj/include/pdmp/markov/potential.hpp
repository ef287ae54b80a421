#pragma once

#include <cstddef>
#include <functional>

#include "pdmp/core/quadrature.hpp"

namespace pdmp::markov {

using ScalarFn = std::function<double(double)>;

/// A potential on the circle with its derivative and a certified bound on
/// sup |dV| used as the global thinning envelope.
struct FrozenPotential {
    ScalarFn V;
    ScalarFn dV;
    double dV_sup = 0.0;
};

inline constexpr double kSupMargin = 1.05;
inline constexpr std::size_t kSupNodes = 4096;

/// Max over grid nodes of |f|.
double grid_max_abs(const ScalarFn& f, const PeriodicGrid& grid);

/// max_k |dV(x_k) - (V(x_k + h) - V(x_k - h)) / (2h)| over the grid.
double derivative_mismatch(const ScalarFn& V, const ScalarFn& dV, const PeriodicGrid& grid, double h = 1e-5);

/// Builds a FrozenPotential with dV_sup = margin * (max |dV| on 4096 nodes).
/// Throws ConfigError if dV fails the finite-difference check (1e-6) or
/// margin < 1.
FrozenPotential make_frozen_potential(ScalarFn V, ScalarFn dV, double margin = kSupMargin);

/// The zero potential.
FrozenPotential zero_potential();

}  // namespace pdmp::markov
