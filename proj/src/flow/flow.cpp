#include "pdmp/flow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pdmp/core/errors.hpp"
#include "pdmp/equilibria/tilted_family.hpp"

namespace pdmp::flow {

namespace {

constexpr double kEscape = 1.0 + 1e-6;

FlowTrace rk4(const equilibria::TiltedFamily& fam, Vec2 x, double T_flow, double dt) {
    auto axpy = [](const Vec2& p, double h, const Vec2& k) { return Vec2{p[0] + h * k[0], p[1] + h * k[1]}; };
    auto F = [&fam](const Vec2& p) { return fam.field(p[0], p[1]); };

    const auto n_steps = static_cast<std::size_t>(std::ceil(T_flow / dt - 1e-9));
    FlowTrace tr;
    tr.times.reserve(n_steps + 1);
    tr.points.reserve(n_steps + 1);
    tr.times.push_back(0.0);
    tr.points.push_back(x);
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double s0 = static_cast<double>(i) * dt;
        const double h = std::min(dt, T_flow - s0);
        const Vec2 k1 = F(x);
        const Vec2 k2 = F(axpy(x, 0.5 * h, k1));
        const Vec2 k3 = F(axpy(x, 0.5 * h, k2));
        const Vec2 k4 = F(axpy(x, h, k3));
        for (int c = 0; c < 2; ++c) x[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        const double norm = std::hypot(x[0], x[1]);
        if (!(norm <= kEscape)) throw NumericError("integrate_flow: trajectory left the unit disk");
        if (norm > 1.0) x = {x[0] / norm, x[1] / norm};
        tr.times.push_back(i + 1 == n_steps ? T_flow : s0 + h);
        tr.points.push_back(x);
    }
    return tr;
}

}  // namespace

FlowTrace integrate_flow(const ModelSpec& model, Vec2 start, double T_flow, double dt, const FlowOptions& opts) {
    if (!(std::hypot(start[0], start[1]) <= 1.0 + 1e-12)) {
        throw DomainError("integrate_flow: start must lie in the closed unit disk");
    }
    if (!(T_flow >= 0.0) || !std::isfinite(T_flow)) throw DomainError("integrate_flow: T_flow must be >= 0");
    if (!(dt > 0.0 && dt <= 0.1)) throw DomainError("integrate_flow: dt must lie in (0, 0.1]");

    const equilibria::TiltedFamily fam(model, opts.grid);
    FlowTrace tr = rk4(fam, start, T_flow, dt);
    if (opts.self_check) {
        const FlowTrace half = rk4(fam, start, T_flow, 0.5 * dt);
        if (!(sup_difference(tr, half) < opts.self_check_tol)) {
            throw NumericError("integrate_flow: step-halving self-check failed");
        }
    }
    return tr;
}

double sup_difference(const FlowTrace& coarse, const FlowTrace& fine) {
    double worst = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const double t = coarse.times[i];
        while (j < fine.size() && fine.times[j] < t - 1e-9) ++j;
        if (j == fine.size() || std::abs(fine.times[j] - t) > 1e-9) {
            throw DomainError("sup_difference: time grids are not nested");
        }
        worst = std::max(worst, std::hypot(coarse.points[i][0] - fine.points[j][0],
                                           coarse.points[i][1] - fine.points[j][1]));
    }
    return worst;
}

namespace {

struct LogTimeSeries {
    std::vector<double> s;
    std::vector<Vec2> p;

    Vec2 at(double q) const {
        auto it = std::upper_bound(s.begin(), s.end(), q);
        if (it == s.begin()) return p.front();
        if (it == s.end()) return p.back();
        const std::size_t k = static_cast<std::size_t>(it - s.begin());
        const double w = (q - s[k - 1]) / (s[k] - s[k - 1]);
        return {p[k - 1][0] + w * (p[k][0] - p[k - 1][0]), p[k - 1][1] + w * (p[k][1] - p[k - 1][1])};
    }
};

}  // namespace

double pseudotrajectory_error(const sivjp::MomentTrace& sim, const ModelSpec& model, double t_anchor,
                              double T_window, double dt, const FlowOptions& opts) {
    if (!(T_window > 0.0)) throw DomainError("pseudotrajectory_error: T_window must be positive");
    LogTimeSeries z;
    for (std::size_t i = 0; i < sim.size(); ++i) {
        if (sim.times[i] <= 0.0) continue;
        const double s = std::log(sim.times[i]);
        if (!z.s.empty() && s <= z.s.back()) continue;
        z.s.push_back(s);
        z.p.push_back({sim.a_vals[i], sim.b_vals[i]});
    }
    const double s_end = t_anchor + T_window;
    const double slack = 1e-9;
    if (z.s.empty() || z.s.front() > t_anchor + slack || z.s.back() < s_end - slack) {
        throw DomainError("pseudotrajectory_error: trace does not cover the window");
    }
    const auto inside = std::count_if(z.s.begin(), z.s.end(),
                                      [&](double s) { return s >= t_anchor - slack && s <= s_end + slack; });
    if (inside < 50) throw DomainError("pseudotrajectory_error: fewer than 50 snapshots in the window");

    const FlowTrace psi = integrate_flow(model, z.at(t_anchor), T_window, dt, opts);
    double worst = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        const Vec2 q = z.at(t_anchor + psi.times[k]);
        worst = std::max(worst, std::hypot(q[0] - psi.points[k][0], q[1] - psi.points[k][1]));
    }
    return worst;
}

void write_csv(std::ostream& os, const FlowTrace& trace) {
    char buf[128];
    os << "s,a,b\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", trace.times[i], trace.points[i][0], trace.points[i][1]);
        os << buf;
    }
}

}  // namespace pdmp::flow
