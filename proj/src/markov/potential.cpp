#include "pdmp/markov/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdmp/core/errors.hpp"

namespace pdmp::markov {

double grid_max_abs(const ScalarFn& f, const PeriodicGrid& grid) {
    double m = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) m = std::max(m, std::abs(f(grid.node(k))));
    return m;
}

double derivative_mismatch(const ScalarFn& V, const ScalarFn& dV, const PeriodicGrid& grid, double h) {
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double x = grid.node(k);
        const double fd = (V(x + h) - V(x - h)) / (2.0 * h);
        worst = std::max(worst, std::abs(dV(x) - fd));
    }
    return worst;
}

FrozenPotential make_frozen_potential(ScalarFn V, ScalarFn dV, double margin) {
    if (!(margin >= 1.0)) {
        throw ConfigError("make_frozen_potential: sup margin must be >= 1");
    }
    const PeriodicGrid grid(kSupNodes);
    const double mismatch = derivative_mismatch(V, dV, grid);
    if (!(mismatch <= 1e-6)) {
        throw ConfigError("make_frozen_potential: derivative fails finite-difference check (" +
                          std::to_string(mismatch) + ")");
    }
    const double sup = margin * grid_max_abs(dV, grid);
    return FrozenPotential{std::move(V), std::move(dV), sup};
}

FrozenPotential zero_potential() {
    return FrozenPotential{[](double) { return 0.0; }, [](double) { return 0.0; }, 0.0};
}

}  // namespace pdmp::markov
