#include "pdmp/equilibria/tilted_family.hpp"

#include <algorithm>
#include <cmath>

namespace pdmp::equilibria {

TiltedFamily::TiltedFamily(const ModelSpec& model, const PeriodicGrid& grid)
    : grid_(grid), rho_(model.rho), minus_u_(grid.size()), cos_(grid.size()), sin_(grid.size()) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double z = grid.node(k);
        minus_u_[k] = -model.U(z);
        cos_[k] = std::cos(z);
        sin_[k] = std::sin(z);
    }
}

TiltedFamily::Sums TiltedFamily::sums(double a, double b, bool second) const {
    const std::size_t n = grid_.size();
    const double ra = rho_ * a, rb = rho_ * b;
    double shift = -INFINITY;
    for (std::size_t k = 0; k < n; ++k) shift = std::max(shift, minus_u_[k] + ra * cos_[k] + rb * sin_[k]);
    Sums s;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = std::exp(minus_u_[k] + ra * cos_[k] + rb * sin_[k] - shift);
        s.z += w;
        s.c += w * cos_[k];
        s.s += w * sin_[k];
        if (second) {
            s.cc += w * cos_[k] * cos_[k];
            s.ss += w * sin_[k] * sin_[k];
            s.cs += w * cos_[k] * sin_[k];
        }
    }
    return s;
}

GridDensity TiltedFamily::density(double a, double b) const {
    std::vector<double> logw(grid_.size());
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        logw[k] = minus_u_[k] + rho_ * (a * cos_[k] + b * sin_[k]);
    }
    return density_from_log_weights(grid_, logw);
}

Vec2 TiltedFamily::moments(double a, double b) const {
    const Sums s = sums(a, b, false);
    return {s.c / s.z, s.s / s.z};
}

Vec2 TiltedFamily::field(double a, double b) const {
    const Vec2 m = moments(a, b);
    return {m[0] - a, m[1] - b};
}

Mat2 TiltedFamily::jacobian(double a, double b) const {
    const Sums s = sums(a, b, true);
    const double mc = s.c / s.z, ms = s.s / s.z;
    const double vcc = s.cc / s.z - mc * mc;
    const double vss = s.ss / s.z - ms * ms;
    const double vcs = s.cs / s.z - mc * ms;
    return {{{rho_ * vcc - 1.0, rho_ * vcs}, {rho_ * vcs, rho_ * vss - 1.0}}};
}

}  // namespace pdmp::equilibria
