#pragma once

#include <vector>

#include "pdmp/core/quadrature.hpp"

namespace pdmp {

/// Probability density sampled at the nodes of a periodic grid.
struct GridDensity {
    PeriodicGrid grid{kDensityNodes};
    std::vector<double> values;  // density at node_k
    double logZ = 0.0;           // log of the normalization actually used

    double integral() const { return quad_periodic(values, grid); }
};

/// Normalizes exp(log_weights[k]) into a density. log_weights is shifted by
/// its maximum before exponentiation; logZ accounts for the shift.
GridDensity density_from_log_weights(const PeriodicGrid& grid, const std::vector<double>& log_weights);

}  // namespace pdmp
