#include "pdmp/core/quadrature.hpp"

#include <cmath>
#include <string>

#include "pdmp/core/errors.hpp"

namespace pdmp {

PeriodicGrid::PeriodicGrid(std::size_t n) : n_(n) {
    if (n < 4 || n % 2 != 0) {
        throw ConfigError("PeriodicGrid: node count must be even and >= 4, got " + std::to_string(n));
    }
}

double quad_periodic(const std::function<double(double)>& f, const PeriodicGrid& grid) {
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double v = f(grid.node(k));
        if (!std::isfinite(v)) {
            throw QuadratureError("quad_periodic: non-finite integrand at node " + std::to_string(k), k);
        }
        sum += v;
    }
    return grid.spacing() * sum;
}

double quad_periodic(std::span<const double> values, const PeriodicGrid& grid) {
    if (values.size() != grid.size()) {
        throw ConfigError("quad_periodic: value count does not match grid");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) {
            throw QuadratureError("quad_periodic: non-finite integrand at node " + std::to_string(k), k);
        }
        sum += values[k];
    }
    return grid.spacing() * sum;
}

}  // namespace pdmp
