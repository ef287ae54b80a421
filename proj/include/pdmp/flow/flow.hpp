#pragma once

#include <ostream>
#include <vector>

#include "pdmp/equilibria/equilibria.hpp"
#include "pdmp/sivjp/engine.hpp"

namespace pdmp::flow {

using equilibria::Vec2;
using sivjp::ModelSpec;

/// Trajectory of d/ds (a, b) = Fbar(a, b) in flow time s.
struct FlowTrace {
    std::vector<double> times;
    std::vector<Vec2> points;

    std::size_t size() const noexcept { return times.size(); }
    Vec2 final() const { return points.back(); }
};

struct FlowOptions {
    PeriodicGrid grid{kDensityNodes};
    /// Compare against a dt/2 integration and throw if they differ.
    bool self_check = true;
    double self_check_tol = 1e-8;
};

inline constexpr double kDefaultFlowStep = 0.01;

/// Classical RK4 from `start` over [0, T_flow] with step dt (the last step is
/// shortened to land on T_flow). Points slightly outside the unit disk are
/// projected back; escapes beyond 1 + 1e-6 throw NumericError.
FlowTrace integrate_flow(const ModelSpec& model, Vec2 start, double T_flow, double dt = kDefaultFlowStep,
                         const FlowOptions& opts = {});

/// Sup-norm distance between two traces at their common times (`fine` must
/// contain every time of `coarse`, e.g. a dt/2 trace).
double sup_difference(const FlowTrace& coarse, const FlowTrace& fine);

/// Sup over s in [t_anchor, t_anchor + T_window] of |zeta(s) - Psi_{s - t_anchor}(zeta(t_anchor))|
/// where zeta(s) is the simulated (a, b) at process time e^s, linearly
/// interpolated in s. Needs snapshots covering the window, at least 50 inside it.
double pseudotrajectory_error(const sivjp::MomentTrace& sim, const ModelSpec& model, double t_anchor,
                              double T_window, double dt = kDefaultFlowStep, const FlowOptions& opts = {});

/// CSV `s,a,b`.
void write_csv(std::ostream& os, const FlowTrace& trace);

}  // namespace pdmp::flow
