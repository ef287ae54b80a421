#include "pdmp/markov/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdmp/core/errors.hpp"

namespace pdmp::markov {

void deposit_arc(std::vector<double>& masses, const PeriodicGrid& grid, double x0, double velocity,
                 double tau) {
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    if (!(tau > 0.0)) return;

    double c = wrap(x0 + 0.5 * h) / h;
    std::size_t idx = static_cast<std::size_t>(c);
    if (idx >= n) idx = n - 1;
    double frac = c - static_cast<double>(idx);

    if (velocity == 0.0) {
        masses[idx] += tau;
        return;
    }
    const double speed = std::abs(velocity);
    const double cell_time = h / speed;
    double remaining = speed * tau / h;

    const double loops = std::floor(remaining / static_cast<double>(n));
    if (loops > 0.0) {
        for (double& m : masses) m += loops * cell_time;
        remaining -= loops * static_cast<double>(n);
    }

    if (velocity > 0.0) {
        while (remaining > 0.0) {
            const double step = std::min(1.0 - frac, remaining);
            masses[idx] += step * cell_time;
            remaining -= step;
            idx = (idx + 1) % n;
            frac = 0.0;
        }
    } else {
        while (remaining > 0.0) {
            if (frac <= 0.0) {
                idx = (idx + n - 1) % n;
                frac = 1.0;
            }
            const double step = std::min(frac, remaining);
            masses[idx] += step * cell_time;
            remaining -= step;
            frac = 0.0;
        }
    }
}

std::vector<double> sojourn_masses(const TelegraphLog& log, const PeriodicGrid& grid) {
    std::vector<double> masses(grid.size(), 0.0);
    double t = 0.0;
    TelegraphState s = log.initial;
    for (std::size_t i = 0; i < log.n_jumps(); ++i) {
        deposit_arc(masses, grid, s.x.value(), s.y, log.jump_times[i] - t);
        t = log.jump_times[i];
        s = log.post_jump_states[i];
    }
    deposit_arc(masses, grid, s.x.value(), s.y, log.t_final - t);
    return masses;
}

std::vector<double> sojourn_masses(const TorusVJPLog& log, const PeriodicGrid& grid, std::size_t axis) {
    std::vector<double> masses(grid.size(), 0.0);
    double t = 0.0;
    const TorusVJPState* s = &log.initial;
    for (std::size_t i = 0; i < log.n_jumps(); ++i) {
        deposit_arc(masses, grid, s->x[axis].value(), s->y[axis], log.jump_times[i] - t);
        t = log.jump_times[i];
        s = &log.post_jump_states[i];
    }
    deposit_arc(masses, grid, s->x[axis].value(), s->y[axis], log.t_final - t);
    return masses;
}

namespace {

void deposit_segment(std::vector<double>& masses, std::size_t cells, const TorusVJPState& s, double tau) {
    const std::size_t d = s.x.dim();
    const double h = kTwoPi / static_cast<double>(cells);
    std::vector<std::size_t> idx(d);
    std::vector<double> frac(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double c = s.x[i].value() / h;
        idx[i] = std::min(static_cast<std::size_t>(c), cells - 1);
        frac[i] = c - static_cast<double>(idx[i]);
    }
    double remaining = tau;
    while (remaining > 0.0) {
        double dt = remaining;
        std::size_t hit = d;
        for (std::size_t i = 0; i < d; ++i) {
            const double v = s.y[i];
            if (v == 0.0) continue;
            const double to_edge = v > 0.0 ? (1.0 - frac[i]) * h / v : frac[i] * h / -v;
            if (to_edge < dt) {
                dt = to_edge;
                hit = i;
            }
        }
        std::size_t flat = 0;
        for (std::size_t i = 0; i < d; ++i) flat = flat * cells + idx[i];
        masses[flat] += dt;
        remaining -= dt;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == hit) continue;
            frac[i] = std::clamp(frac[i] + s.y[i] * dt / h, 0.0, 1.0);
        }
        if (hit < d) {
            if (s.y[hit] > 0.0) {
                idx[hit] = (idx[hit] + 1) % cells;
                frac[hit] = 0.0;
            } else {
                idx[hit] = (idx[hit] + cells - 1) % cells;
                frac[hit] = 1.0;
            }
        }
    }
}

}  // namespace

std::vector<double> joint_sojourn_masses(const TorusVJPLog& log, std::size_t cells_per_dim) {
    const std::size_t d = log.initial.x.dim();
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= cells_per_dim;
    std::vector<double> masses(total, 0.0);
    double t = 0.0;
    const TorusVJPState* s = &log.initial;
    for (std::size_t i = 0; i < log.n_jumps(); ++i) {
        deposit_segment(masses, cells_per_dim, *s, log.jump_times[i] - t);
        t = log.jump_times[i];
        s = &log.post_jump_states[i];
    }
    deposit_segment(masses, cells_per_dim, *s, log.t_final - t);
    return masses;
}

GridDensity invariant_density(const ScalarFn& V, const PeriodicGrid& grid) {
    std::vector<double> logw(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) logw[k] = -V(grid.node(k));
    return density_from_log_weights(grid, logw);
}

GridDensity invariant_density(const FrozenPotential& pot, const PeriodicGrid& grid) {
    return invariant_density(pot.V, grid);
}

GridDensity empirical_density(const TelegraphLog& log, const PeriodicGrid& grid) {
    if (!(log.t_final > 0.0)) throw DomainError("empirical_density: empty trajectory");
    GridDensity d{grid, sojourn_masses(log, grid), 0.0};
    const double scale = 1.0 / (log.t_final * grid.spacing());
    for (double& v : d.values) v *= scale;
    return d;
}

double tv_from_masses(const std::vector<double>& masses, const GridDensity& target) {
    if (masses.size() != target.values.size()) throw ConfigError("tv_from_masses: size mismatch");
    double total = 0.0;
    for (double m : masses) total += m;
    if (!(total > 0.0)) throw DomainError("tv_from_masses: zero total mass");
    const double h = target.grid.spacing();
    double tv = 0.0;
    for (std::size_t k = 0; k < masses.size(); ++k) {
        tv += std::abs(masses[k] / total - target.values[k] * h);
    }
    return 0.5 * tv;
}

double empirical_tv(const TelegraphLog& log, const GridDensity& target) {
    if (!(log.t_final > 0.0)) throw DomainError("empirical_tv: empty trajectory");
    return tv_from_masses(sojourn_masses(log, target.grid), target);
}

double positive_velocity_fraction(const TelegraphLog& log) {
    if (!(log.t_final > 0.0)) throw DomainError("positive_velocity_fraction: empty trajectory");
    double plus = 0.0;
    double t = 0.0;
    int y = log.initial.y;
    for (std::size_t i = 0; i < log.n_jumps(); ++i) {
        if (y > 0) plus += log.jump_times[i] - t;
        t = log.jump_times[i];
        y = log.post_jump_states[i].y;
    }
    if (y > 0) plus += log.t_final - t;
    return plus / log.t_final;
}

}  // namespace pdmp::markov
