#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pdmp/core/grid_density.hpp"
#include "pdmp/sivjp/model.hpp"

namespace pdmp::equilibria {

using sivjp::ModelSpec;
using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Tilted density pibar_rho(a, b) proportional to exp(-U + rho (a cos + b sin)).
GridDensity pibar(const ModelSpec& model, double a, double b,
                  const PeriodicGrid& grid = PeriodicGrid(kDensityNodes));

/// (int cos d, int sin d).
Vec2 moments(const GridDensity& d);

/// Reduced vector field moments(pibar(a, b)) - (a, b).
Vec2 Fbar(const ModelSpec& model, double a, double b, const PeriodicGrid& grid = PeriodicGrid(kDensityNodes));

/// Jacobian of Fbar: rho * Cov_{pibar(a,b)}(cos, sin) - I.
Mat2 jacobian_Fbar(const ModelSpec& model, double a, double b,
                   const PeriodicGrid& grid = PeriodicGrid(kDensityNodes));

struct Eigen2 {
    std::array<double, 2> re{};
    std::array<double, 2> im{};
};

/// Eigenvalues of a real 2x2 matrix, real parts sorted ascending.
Eigen2 eigenvalues(const Mat2& m);

enum class Stability { Sink, Saddle, Source, Degenerate };

std::string to_string(Stability s);

inline constexpr double kEigenTol = 1e-7;

/// Sink if both real parts < -tol, Source if both > tol, Degenerate if some
/// |real part| <= tol, Saddle otherwise.
Stability classify(const Eigen2& eig, double tol = kEigenTol);

/// Positive root r of int cos dpibar_rho(r, 0) = r for U = 0, by bisection on
/// [tol, 1]. Throws DomainError for rho <= 2.
double solve_r_of_rho(double rho, double tol = 1e-12, const PeriodicGrid& grid = PeriodicGrid(kThresholdNodes));

/// Checks int cos dm_U = int sin dm_U = 0 (within 1e-10) for m_U = pibar(0, 0).
bool centered_gibbs(const ModelSpec& model, const PeriodicGrid& grid = PeriodicGrid(kThresholdNodes));

/// 1 / int cos^2 dm_U. Requires centered_gibbs.
double rho_c(const ModelSpec& model, const PeriodicGrid& grid = PeriodicGrid(kThresholdNodes));

/// 1 / int sin^2 dm_U. Requires centered_gibbs.
double rho_2(const ModelSpec& model, const PeriodicGrid& grid = PeriodicGrid(kThresholdNodes));

/// U(z) = U(pi - z) on the grid (mirror about the b-axis).
bool symmetric_about_b_axis(const ModelSpec& model, const PeriodicGrid& grid = PeriodicGrid(kThresholdNodes));
/// U(z) = U(-z) on the grid (mirror about the a-axis).
bool symmetric_about_a_axis(const ModelSpec& model, const PeriodicGrid& grid = PeriodicGrid(kThresholdNodes));

/// xi(a) = int (cos z - a) exp(-U(z) + rho a cos z) dz. Requires U centred,
/// U(z) = U(-z) and U(z) = U(pi - z); throws DomainError otherwise.
double xi(const ModelSpec& model, double a, const PeriodicGrid& grid = PeriodicGrid(kThresholdNodes));

/// b-axis analogue: int (sin z - b) exp(-U(z) + rho b sin z) dz.
double xi_b(const ModelSpec& model, double b, const PeriodicGrid& grid = PeriodicGrid(kThresholdNodes));

/// Positive zero of an axis function on (0, 1), or 0 if it has no sign change.
double positive_axis_root(const std::function<double(double)>& f);

enum class Manifold { Point, Circle };

struct FixedPointRecord {
    double a = 0.0;
    double b = 0.0;
    double residual = 0.0;
    Mat2 jacobian{};
    Eigen2 eig;
    Stability stability = Stability::Degenerate;
    /// Circle: the record stands for the whole circle |(a, b)| = hypot(a, b)
    /// of a rotation-invariant model; stability then uses the transverse
    /// (radial) eigenvalue, the tangential one vanishing by symmetry.
    Manifold manifold = Manifold::Point;

    double distance_to(double pa, double pb) const;
};

struct FixedPointOptions {
    PeriodicGrid grid{kDensityNodes};
    std::size_t start_grid = 17;
    double dedup_radius = 1e-6;
    double eig_tol = kEigenTol;
    int max_newton_iters = 80;
};

/// Fixed points of Fbar in the closed unit disk: axis roots via xi (when
/// the symmetry preconditions hold) plus damped Newton from a start lattice,
/// deduplicated and classified. Sorted by (a, b).
std::vector<FixedPointRecord> find_fixed_points(const ModelSpec& model, const FixedPointOptions& opts = {});

/// Builds the record (Jacobian, eigenvalues, stability) of a known root.
FixedPointRecord make_record(const ModelSpec& model, double a, double b, const FixedPointOptions& opts = {});

/// Free energy J(g) = int U g - (rho/2)(a^2 + b^2) + int g ln g. Also computes
/// the generic double quadrature 1/2 sum W g g + int g ln g and throws
/// NumericError if the two differ by more than 1e-8. Sinks are local minima.
double free_energy(const ModelSpec& model, const GridDensity& d);
double free_energy_closed_form(const ModelSpec& model, const GridDensity& d);
double free_energy_double_quadrature(const ModelSpec& model, const GridDensity& d);

/// Returns (int f(z) exp(rho_r (cos(z - theta) - 1)) dz,
///          f''(theta) sqrt(pi / (2 rho_r^3))). Requires |f(theta)| < 1e-12.
std::pair<double, double> laplace_check(const std::function<double(double)>& f, double f2_theta,
                                        double theta, double rho_r, const PeriodicGrid& grid);

}  // namespace pdmp::equilibria
