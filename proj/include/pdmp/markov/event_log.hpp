#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "pdmp/core/torus.hpp"

namespace pdmp::markov {

struct TelegraphState {
    Angle x;
    int y = 1;  // velocity, +1 or -1
};

/// Position on T^d and a velocity in R^d.
struct TorusVJPState {
    TorusVec x;
    std::vector<double> y;
};

/// Skeleton of a velocity jump trajectory: the initial state, every accepted
/// jump (time and post-jump state) and the state at the horizon.
template <class State>
struct EventLog {
    State initial;
    std::vector<double> jump_times;
    std::vector<State> post_jump_states;
    double t_final = 0.0;
    State state_final;
    std::uint64_t n_proposals = 0;

    std::size_t n_jumps() const noexcept { return jump_times.size(); }
};

using TelegraphLog = EventLog<TelegraphState>;
using TorusVJPLog = EventLog<TorusVJPState>;

/// CSV with header `t,x,y`: initial row, one row per jump, final row.
void write_csv(std::ostream& os, const TelegraphLog& log);

/// CSV with header `t,x0..x{d-1},y0..y{d-1}`.
void write_csv(std::ostream& os, const TorusVJPLog& log);

}  // namespace pdmp::markov
