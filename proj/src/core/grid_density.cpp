#include "pdmp/core/grid_density.hpp"

#include <algorithm>
#include <cmath>

#include "pdmp/core/errors.hpp"

namespace pdmp {

GridDensity density_from_log_weights(const PeriodicGrid& grid, const std::vector<double>& log_weights) {
    if (log_weights.size() != grid.size()) {
        throw ConfigError("density_from_log_weights: size mismatch");
    }
    const double shift = *std::max_element(log_weights.begin(), log_weights.end());
    if (!std::isfinite(shift)) {
        throw NumericError("density_from_log_weights: non-finite log weight");
    }
    GridDensity d{grid, std::vector<double>(grid.size()), 0.0};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        d.values[k] = std::exp(log_weights[k] - shift);
    }
    const double z = quad_periodic(d.values, grid);
    for (double& v : d.values) v /= z;
    d.logZ = std::log(z) + shift;
    return d;
}

}  // namespace pdmp
