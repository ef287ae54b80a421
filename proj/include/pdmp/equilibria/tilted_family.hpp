#pragma once

#include <vector>

#include "pdmp/equilibria/equilibria.hpp"

namespace pdmp::equilibria {

/// pibar_rho(a, b) for one model on one grid, with -U, cos and sin cached at
/// the nodes. Everything in this module and the flow integrator evaluates
/// the field through this class.
class TiltedFamily {
public:
    TiltedFamily(const ModelSpec& model, const PeriodicGrid& grid);

    const PeriodicGrid& grid() const noexcept { return grid_; }
    double rho() const noexcept { return rho_; }

    GridDensity density(double a, double b) const;
    Vec2 moments(double a, double b) const;
    Vec2 field(double a, double b) const;
    Mat2 jacobian(double a, double b) const;

private:
    struct Sums {
        double z = 0, c = 0, s = 0, cc = 0, ss = 0, cs = 0;
    };
    Sums sums(double a, double b, bool second) const;

    PeriodicGrid grid_;
    double rho_;
    std::vector<double> minus_u_, cos_, sin_;
};

}  // namespace pdmp::equilibria
