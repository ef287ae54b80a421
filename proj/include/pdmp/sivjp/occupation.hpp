#pragma once

#include <optional>
#include <vector>

#include "pdmp/core/quadrature.hpp"
#include "pdmp/sivjp/model.hpp"

namespace pdmp::sivjp {

/// Sojourn histogram of the occupation measure. `mass` holds
/// r * mu0 + (time spent in each cell) and so sums to r + t.
struct OccupationHistogram {
    PeriodicGrid grid{kDensityNodes};
    std::vector<double> mass;
};

/// Sufficient statistics of the occupation measure
/// mu_t = (r mu0 + int_0^t delta_{X_s} ds) / (r + t).
struct OccupationStats {
    double r = 1.0;
    double t = 0.0;
    double a = 0.0;  // int cos dmu_t
    double b = 0.0;  // int sin dmu_t
    std::optional<OccupationHistogram> hist;

    double weight() const noexcept { return r + t; }
    /// Normalized cell probabilities (sum to 1). Requires hist.
    std::vector<double> histogram() const;
};

/// mu0 given by its moments only.
OccupationStats initial_occupation(double r, double a0, double b0);
/// mu0 given by cell probabilities on `grid`; moments are taken from the
/// cell-centre quadrature of those probabilities.
OccupationStats initial_occupation(double r, const PeriodicGrid& grid, const std::vector<double>& probs);
/// Uniform mu0 with a histogram on `grid`.
OccupationStats uniform_occupation(double r, const PeriodicGrid& grid);

/// V'_mu(x) = U'(x) + rho (a sin x - b cos x).
double drift_Vprime(const ModelSpec& model, double x, const OccupationStats& occ);

/// Advances mu along the straight flight x(s) = x0 + y s, s in [0, tau], using
/// the closed-form trigonometric integrals; deposits the swept arc into the
/// histogram when present.
OccupationStats advect_occupation(const OccupationStats& occ, double x0, int y, double tau);

/// In-place variant used by the simulation loop.
void advect_in_place(OccupationStats& occ, double x0, int y, double tau);

}  // namespace pdmp::sivjp
