#include "pdmp/equilibria/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdmp/core/errors.hpp"
#include "pdmp/equilibria/tilted_family.hpp"

namespace pdmp::equilibria {

GridDensity pibar(const ModelSpec& model, double a, double b, const PeriodicGrid& grid) {
    return TiltedFamily(model, grid).density(a, b);
}

Vec2 moments(const GridDensity& d) {
    double a = 0.0, s = 0.0;
    for (std::size_t k = 0; k < d.values.size(); ++k) {
        const double z = d.grid.node(k);
        a += std::cos(z) * d.values[k];
        s += std::sin(z) * d.values[k];
    }
    const double h = d.grid.spacing();
    return {a * h, s * h};
}

Vec2 Fbar(const ModelSpec& model, double a, double b, const PeriodicGrid& grid) {
    return TiltedFamily(model, grid).field(a, b);
}

Mat2 jacobian_Fbar(const ModelSpec& model, double a, double b, const PeriodicGrid& grid) {
    return TiltedFamily(model, grid).jacobian(a, b);
}

Eigen2 eigenvalues(const Mat2& m) {
    const double half_tr = 0.5 * (m[0][0] + m[1][1]);
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const double disc = half_tr * half_tr - det;
    Eigen2 e;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        e.re = {half_tr - s, half_tr + s};
    } else {
        const double s = std::sqrt(-disc);
        e.re = {half_tr, half_tr};
        e.im = {-s, s};
    }
    return e;
}

std::string to_string(Stability s) {
    switch (s) {
        case Stability::Sink: return "Sink";
        case Stability::Saddle: return "Saddle";
        case Stability::Source: return "Source";
        case Stability::Degenerate: return "Degenerate";
    }
    return "Degenerate";
}

Stability classify(const Eigen2& eig, double tol) {
    const double lo = eig.re[0], hi = eig.re[1];
    if (std::abs(lo) <= tol || std::abs(hi) <= tol) return Stability::Degenerate;
    if (hi < -tol) return Stability::Sink;
    if (lo > tol) return Stability::Source;
    return Stability::Saddle;
}

double solve_r_of_rho(double rho, double tol, const PeriodicGrid& grid) {
    if (!(rho > 2.0)) throw DomainError("solve_r_of_rho: a positive root exists only for rho > 2");
    if (!(tol > 0.0 && tol < 0.5)) throw DomainError("solve_r_of_rho: tol must lie in (0, 0.5)");
    const TiltedFamily fam(sivjp::make_model(sivjp::zero_potential(), rho), grid);
    auto g = [&fam](double r) { return fam.moments(r, 0.0)[0] - r; };
    double lo = tol, hi = 1.0;
    double glo = g(lo);
    if (!(glo > 0.0) || !(g(hi) < 0.0)) throw NumericError("solve_r_of_rho: root is not bracketed");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (std::abs(gm) < tol && hi - lo < tol) return mid;
        if (gm > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double r = 0.5 * (lo + hi);
    if (!(std::abs(g(r)) < tol)) throw NumericError("solve_r_of_rho: bisection did not converge");
    return r;
}

bool centered_gibbs(const ModelSpec& model, const PeriodicGrid& grid) {
    const Vec2 m = TiltedFamily(model, grid).moments(0.0, 0.0);
    return std::abs(m[0]) < 1e-10 && std::abs(m[1]) < 1e-10;
}

namespace {

double gibbs_second_moment(const ModelSpec& model, const PeriodicGrid& grid, bool use_cos) {
    if (!centered_gibbs(model, grid)) {
        throw DomainError("threshold constant requires int cos dm_U = int sin dm_U = 0");
    }
    const GridDensity m = TiltedFamily(model, grid).density(0.0, 0.0);
    double s = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double c = use_cos ? std::cos(grid.node(k)) : std::sin(grid.node(k));
        s += c * c * m.values[k];
    }
    return s * grid.spacing();
}

bool mirrored(const ModelSpec& model, const PeriodicGrid& grid, double shift) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double z = grid.node(k);
        if (std::abs(model.U(z) - model.U(shift - z)) >= 1e-10) return false;
    }
    return true;
}

void require_axis_symmetry(const ModelSpec& model, const PeriodicGrid& grid, const char* who) {
    if (!symmetric_about_a_axis(model, grid) || !symmetric_about_b_axis(model, grid) ||
        !centered_gibbs(model, grid)) {
        throw DomainError(std::string(who) + ": U must satisfy U(z) = U(-z) = U(pi - z)");
    }
}

}  // namespace

double rho_c(const ModelSpec& model, const PeriodicGrid& grid) {
    return 1.0 / gibbs_second_moment(model, grid, true);
}

double rho_2(const ModelSpec& model, const PeriodicGrid& grid) {
    return 1.0 / gibbs_second_moment(model, grid, false);
}

bool symmetric_about_b_axis(const ModelSpec& model, const PeriodicGrid& grid) {
    return mirrored(model, grid, std::numbers::pi);
}

bool symmetric_about_a_axis(const ModelSpec& model, const PeriodicGrid& grid) {
    return mirrored(model, grid, 0.0);
}

double xi(const ModelSpec& model, double a, const PeriodicGrid& grid) {
    require_axis_symmetry(model, grid, "xi");
    return quad_periodic(
        [&](double z) { return (std::cos(z) - a) * std::exp(-model.U(z) + model.rho * a * std::cos(z)); }, grid);
}

double xi_b(const ModelSpec& model, double b, const PeriodicGrid& grid) {
    require_axis_symmetry(model, grid, "xi_b");
    return quad_periodic(
        [&](double z) { return (std::sin(z) - b) * std::exp(-model.U(z) + model.rho * b * std::sin(z)); }, grid);
}

double positive_axis_root(const std::function<double(double)>& f) {
    std::vector<double> pts;
    for (int i = 0; i <= 48; ++i) pts.push_back(std::pow(10.0, -8.0 + 6.0 * i / 48.0));
    for (int i = 1; i <= 400; ++i) pts.push_back(0.01 + 0.99 * i / 400.0);
    std::sort(pts.begin(), pts.end());
    double prev_x = pts.front();
    double prev_f = f(prev_x);
    if (!(prev_f > 0.0)) return 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double x = pts[i];
        const double fx = f(x);
        if (fx <= 0.0) {
            double lo = prev_x, hi = x;
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                (f(mid) > 0.0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev_x = x;
        prev_f = fx;
    }
    return 0.0;
}

double FixedPointRecord::distance_to(double pa, double pb) const {
    if (manifold == Manifold::Circle) return std::abs(std::hypot(pa, pb) - std::hypot(a, b));
    return std::hypot(pa - a, pb - b);
}

FixedPointRecord make_record(const ModelSpec& model, double a, double b, const FixedPointOptions& opts) {
    const TiltedFamily fam(model, opts.grid);
    FixedPointRecord rec;
    rec.a = a;
    rec.b = b;
    const Vec2 f = fam.field(a, b);
    rec.residual = std::hypot(f[0], f[1]);
    rec.jacobian = fam.jacobian(a, b);
    rec.eig = eigenvalues(rec.jacobian);
    rec.stability = classify(rec.eig, opts.eig_tol);
    return rec;
}

namespace {

bool newton(const TiltedFamily& fam, Vec2& x, int max_iters) {
    Vec2 f = fam.field(x[0], x[1]);
    double fn = std::hypot(f[0], f[1]);
    for (int it = 0; it < max_iters && fn > 1e-14; ++it) {
        const Mat2 J = fam.jacobian(x[0], x[1]);
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        Vec2 step;
        if (std::abs(det) > 1e-12) {
            step = {(J[1][1] * f[0] - J[0][1] * f[1]) / det, (-J[1][0] * f[0] + J[0][0] * f[1]) / det};
        } else {
            // Levenberg-Marquardt step for a (near) singular Jacobian.
            const double mu = 1e-8;
            const Mat2 A = {{{J[0][0] * J[0][0] + J[1][0] * J[1][0] + mu, J[0][0] * J[0][1] + J[1][0] * J[1][1]},
                             {J[0][0] * J[0][1] + J[1][0] * J[1][1], J[0][1] * J[0][1] + J[1][1] * J[1][1] + mu}}};
            const Vec2 g = {J[0][0] * f[0] + J[1][0] * f[1], J[0][1] * f[0] + J[1][1] * f[1]};
            const double d = A[0][0] * A[1][1] - A[0][1] * A[1][0];
            step = {(A[1][1] * g[0] - A[0][1] * g[1]) / d, (-A[1][0] * g[0] + A[0][0] * g[1]) / d};
        }
        double lambda = 1.0;
        bool improved = false;
        while (lambda > 1e-6) {
            const Vec2 trial = {x[0] - lambda * step[0], x[1] - lambda * step[1]};
            const Vec2 ft = fam.field(trial[0], trial[1]);
            const double tn = std::hypot(ft[0], ft[1]);
            if (tn < fn) {
                x = trial;
                f = ft;
                fn = tn;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) break;
    }
    return fn < 1e-10 && std::hypot(x[0], x[1]) <= 1.0 + 1e-9;
}

std::vector<FixedPointRecord> rotation_invariant_census(const ModelSpec& model, const FixedPointOptions& opts) {
    std::vector<FixedPointRecord> out{make_record(model, 0.0, 0.0, opts)};
    if (model.rho > 2.0) {
        const double r = solve_r_of_rho(model.rho, 1e-13, opts.grid);
        FixedPointRecord ring = make_record(model, r, 0.0, opts);
        ring.manifold = Manifold::Circle;
        // At (r, 0) the radial direction is the a-axis.
        const double radial = ring.jacobian[0][0];
        ring.stability = std::abs(radial) <= opts.eig_tol ? Stability::Degenerate
                         : radial < 0.0                  ? Stability::Sink
                                                         : Stability::Source;
        out.push_back(ring);
    }
    return out;
}

}  // namespace

std::vector<FixedPointRecord> find_fixed_points(const ModelSpec& model, const FixedPointOptions& opts) {
    if (model.rotation_invariant()) return rotation_invariant_census(model, opts);

    const TiltedFamily fam(model, opts.grid);
    std::vector<Vec2> roots;

    const PeriodicGrid axis_grid(std::max<std::size_t>(opts.grid.size(), kDensityNodes));
    const bool axis_symmetric = symmetric_about_a_axis(model, axis_grid) &&
                                symmetric_about_b_axis(model, axis_grid) && centered_gibbs(model, axis_grid);
    if (axis_symmetric) {
        roots.push_back({0.0, 0.0});
        const double a_star = positive_axis_root([&](double a) { return xi(model, a, axis_grid); });
        const double b_star = positive_axis_root([&](double b) { return xi_b(model, b, axis_grid); });
        for (const Vec2& c : {Vec2{a_star, 0.0}, Vec2{-a_star, 0.0}, Vec2{0.0, b_star}, Vec2{0.0, -b_star}}) {
            if (c[0] == 0.0 && c[1] == 0.0) continue;
            Vec2 x = c;
            if (newton(fam, x, opts.max_newton_iters)) roots.push_back(x);
        }
    }

    const std::size_t m = opts.start_grid;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            Vec2 x = {-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(m - 1),
                      -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(m - 1)};
            if (x[0] * x[0] + x[1] * x[1] > 1.0 + 1e-12) continue;
            if (newton(fam, x, opts.max_newton_iters)) roots.push_back(x);
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<Vec2> unique;
    for (const Vec2& r : roots) {
        const bool dup = std::any_of(unique.begin(), unique.end(), [&](const Vec2& u) {
            return std::hypot(u[0] - r[0], u[1] - r[1]) < opts.dedup_radius;
        });
        if (!dup) unique.push_back(r);
    }
    if (unique.empty()) throw NumericError("find_fixed_points: no fixed point found");

    std::vector<FixedPointRecord> out;
    for (const Vec2& r : unique) {
        // Clean signed zeros produced by symmetric cancellation.
        const double a = std::abs(r[0]) < 1e-14 ? 0.0 : r[0];
        const double b = std::abs(r[1]) < 1e-14 ? 0.0 : r[1];
        out.push_back(make_record(model, a, b, opts));
    }
    return out;
}

double free_energy_closed_form(const ModelSpec& model, const GridDensity& d) {
    const Vec2 m = moments(d);
    double u_term = 0.0, entropy = 0.0;
    for (std::size_t k = 0; k < d.values.size(); ++k) {
        if (!(d.values[k] > 0.0)) throw DomainError("free_energy: density must be strictly positive");
        u_term += model.U(d.grid.node(k)) * d.values[k];
        entropy += d.values[k] * std::log(d.values[k]);
    }
    const double h = d.grid.spacing();
    return h * u_term - 0.5 * model.rho * (m[0] * m[0] + m[1] * m[1]) + h * entropy;
}

double free_energy_double_quadrature(const ModelSpec& model, const GridDensity& d) {
    const std::size_t n = d.values.size();
    const double h = d.grid.spacing();
    double pair = 0.0, entropy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (!(d.values[j] > 0.0)) throw DomainError("free_energy: density must be strictly positive");
        double row = 0.0;
        for (std::size_t k = 0; k < n; ++k) row += model.W(d.grid.node(j), d.grid.node(k)) * d.values[k];
        pair += row * d.values[j];
        entropy += d.values[j] * std::log(d.values[j]);
    }
    return 0.5 * pair * h * h + h * entropy;
}

double free_energy(const ModelSpec& model, const GridDensity& d) {
    // With W(x, z) = U(x) - rho cos(x - z) + U(z) the two forms coincide
    // exactly (additive constant 0) for any normalized density.
    const double closed = free_energy_closed_form(model, d);
    const double generic = free_energy_double_quadrature(model, d);
    if (std::abs(closed - generic) > 1e-8) {
        throw NumericError("free_energy: closed form and double quadrature disagree");
    }
    return closed;
}

std::pair<double, double> laplace_check(const std::function<double(double)>& f, double f2_theta,
                                        double theta, double rho_r, const PeriodicGrid& grid) {
    if (!(std::abs(f(theta)) < 1e-12)) throw DomainError("laplace_check: f(theta) must vanish");
    const double q = quad_periodic([&](double z) { return f(z) * std::exp(rho_r * (std::cos(z - theta) - 1.0)); },
                                   grid);
    const double asym = f2_theta * std::sqrt(std::numbers::pi / (2.0 * rho_r * rho_r * rho_r));
    return {q, asym};
}

}  // namespace pdmp::equilibria
