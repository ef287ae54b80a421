#include "pdmp/markov/torus_vjp.hpp"

#include <algorithm>
#include <cmath>

#include "pdmp/core/errors.hpp"

namespace pdmp::markov {
namespace {

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

double certify_gradient_bound(const TorusPotential& pot, std::size_t nodes_per_dim, double margin) {
    const PeriodicGrid grid(nodes_per_dim);
    std::vector<std::size_t> idx(pot.dim, 0);
    std::vector<double> coords(pot.dim);
    double worst = 0.0;
    for (;;) {
        for (std::size_t i = 0; i < pot.dim; ++i) coords[i] = grid.node(idx[i]);
        worst = std::max(worst, norm(pot.grad(TorusVec(coords))));
        std::size_t i = 0;
        while (i < pot.dim && ++idx[i] == nodes_per_dim) idx[i++] = 0;
        if (i == pot.dim) break;
    }
    return margin * worst;
}

std::vector<double> sample_sphere(RandomStream& rng, std::size_t dim, double radius) {
    std::vector<double> v(dim);
    double n = 0.0;
    do {
        for (double& c : v) c = rng.normal();
        n = norm(v);
    } while (n == 0.0);
    for (double& c : v) c *= radius / n;
    return v;
}

VelocityLaw VelocityLaw::unit_sphere(std::size_t dim) {
    return VelocityLaw{[dim](RandomStream& rng) { return sample_sphere(rng, dim, 1.0); }, 1.0, 1.0};
}

TorusVJPLog simulate_torus_vjp(const TorusPotential& pot, const VelocityLaw& q, double lambda_bar,
                               TorusVJPState z0, double T, SeedSpec seed, std::uint64_t max_proposals) {
    if (pot.dim < 1) throw ConfigError("simulate_torus_vjp: dimension must be >= 1");
    if (z0.x.dim() != pot.dim || z0.y.size() != pot.dim) {
        throw ConfigError("simulate_torus_vjp: state dimension does not match potential");
    }
    if (!(lambda_bar > 0.0)) throw ConfigError("simulate_torus_vjp: lambda_bar must be positive");
    if (!(T > 0.0)) throw ConfigError("simulate_torus_vjp: horizon must be positive");
    const double speed0 = norm(z0.y);
    if (speed0 < q.speed_min - 1e-12 || speed0 > q.speed_max + 1e-12) {
        throw ConfigError("simulate_torus_vjp: initial speed outside the support of q");
    }
    const double bound = lambda_bar + 2.0 * q.speed_max * pot.grad_sup;
    if (!std::isfinite(bound)) throw ConfigError("simulate_torus_vjp: thinning bound is not finite");

    RandomStream rng(seed);
    TorusVJPLog log;
    log.initial = z0;
    double t = 0.0;
    TorusVec x = z0.x;
    std::vector<double> y = z0.y;
    for (;;) {
        const double dt = rng.exponential() / bound;
        const double u = rng.uniform();
        if (t + dt >= T) {
            x = x.advanced(y, T - t);
            t = T;
            break;
        }
        if (++log.n_proposals > max_proposals) {
            throw RunawayError("simulate_torus_vjp: proposal count exceeded guard");
        }
        t += dt;
        x = x.advanced(y, dt);
        const std::vector<double> g = pot.grad(x);
        const double speed = norm(y);
        const double rate1 = speed * norm(g) + dot(y, g);
        if (rate1 + lambda_bar > bound * (1.0 + 1e-12)) {
            throw NumericError("simulate_torus_vjp: jump rate exceeds thinning bound");
        }
        const double level = u * bound;
        if (level < rate1) {
            y = sample_sphere(rng, pot.dim, speed);
        } else if (level < rate1 + lambda_bar) {
            y = q.sample(rng);
        } else {
            continue;
        }
        log.jump_times.push_back(t);
        log.post_jump_states.push_back({x, y});
    }
    log.t_final = t;
    log.state_final = {x, y};
    return log;
}

}  // namespace pdmp::markov
