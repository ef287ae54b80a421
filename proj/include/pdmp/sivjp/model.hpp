#pragma once

#include <string>
#include <vector>

#include "pdmp/markov/potential.hpp"

namespace pdmp::sivjp {

using markov::ScalarFn;

/// Exterior potential U with its derivative. `name` identifies the registry
/// entry it came from.
struct Potential {
    std::string name;
    ScalarFn value;
    ScalarFn deriv;
};

/// U = 0.
Potential zero_potential();
/// U(z) = -beta cos(2z).
Potential cos2_potential(double beta = 1.0);
/// U(z) = a1 cos(z) + a2 cos(2z).
Potential two_well_potential(double a1, double a2);
/// Trigonometric interpolant of values sampled at 2 pi j / m (m even).
Potential custom_grid_potential(const std::vector<double>& values);

/// Self-interacting telegraph model: exterior potential U, quadratic
/// interaction -rho cos(x - z), base flip rate lambda_min.
struct ModelSpec {
    ScalarFn U;
    ScalarFn dU;
    double dU_sup = 0.0;
    double rho = 0.0;
    double lambda_min = 1.0;
    std::string potential_name;

    /// Interaction kernel W(x, z) = U(x) - rho cos(x - z) + U(z).
    double W(double x, double z) const;
    /// d/dx W(x, z).
    double dW(double x, double z) const;
    /// True when U is constant on the certification grid (rotation-invariant model).
    bool rotation_invariant() const noexcept { return dU_sup == 0.0; }
};

/// Certifies dU (finite-difference check) and sets dU_sup = 1.05 max |dU| on
/// 4096 nodes. Throws ConfigError on a bad derivative or lambda_min <= 0.
ModelSpec make_model(const Potential& U, double rho, double lambda_min = 1.0);

/// The same model with a different interaction strength.
ModelSpec with_rho(const ModelSpec& model, double rho);

}  // namespace pdmp::sivjp
