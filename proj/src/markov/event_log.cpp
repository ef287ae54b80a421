#include "pdmp/markov/event_log.hpp"

#include <cstdio>
#include <string>

namespace pdmp::markov {
namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void row(std::ostream& os, double t, const TelegraphState& s) {
    os << fmt(t) << ',' << fmt(s.x.value()) << ',' << s.y << '\n';
}

void row(std::ostream& os, double t, const TorusVJPState& s) {
    os << fmt(t);
    for (const Angle& a : s.x.coords()) os << ',' << fmt(a.value());
    for (double v : s.y) os << ',' << fmt(v);
    os << '\n';
}

}  // namespace

void write_csv(std::ostream& os, const TelegraphLog& log) {
    os << "t,x,y\n";
    row(os, 0.0, log.initial);
    for (std::size_t i = 0; i < log.n_jumps(); ++i) row(os, log.jump_times[i], log.post_jump_states[i]);
    row(os, log.t_final, log.state_final);
}

void write_csv(std::ostream& os, const TorusVJPLog& log) {
    const std::size_t d = log.initial.x.dim();
    os << 't';
    for (std::size_t i = 0; i < d; ++i) os << ",x" << i;
    for (std::size_t i = 0; i < d; ++i) os << ",y" << i;
    os << '\n';
    row(os, 0.0, log.initial);
    for (std::size_t i = 0; i < log.n_jumps(); ++i) row(os, log.jump_times[i], log.post_jump_states[i]);
    row(os, log.t_final, log.state_final);
}

}  // namespace pdmp::markov
