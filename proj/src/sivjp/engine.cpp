#include "pdmp/sivjp/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "pdmp/core/errors.hpp"

namespace pdmp::sivjp {

void SIVJPConfig::validate() const {
    if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("SIVJPConfig: r must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("SIVJPConfig: T must be positive");
    if (!(record_stride > 0.0)) throw ConfigError("SIVJPConfig: record_stride must be positive");
    if (mu0.a * mu0.a + mu0.b * mu0.b > 1.0 + 1e-12) {
        throw ConfigError("SIVJPConfig: initial moments outside the unit disk");
    }
    if (z0.y != 1 && z0.y != -1) throw ConfigError("SIVJPConfig: velocity must be +1 or -1");
    if (!(model.lambda_min > 0.0)) throw ConfigError("SIVJPConfig: lambda_min must be positive");
    if (thinning_bound && !(*thinning_bound > 0.0)) {
        throw ConfigError("SIVJPConfig: thinning bound must be positive");
    }
}

namespace {

class SnapshotClock {
public:
    explicit SnapshotClock(const SIVJPConfig& cfg)
        : stride_(cfg.record_stride), log_(cfg.log_snapshots), T_(cfg.T) {
        next_ = log_ ? 1.0 : stride_;
    }
    // Next snapshot strictly inside (0, T); T itself is recorded at the end.
    double peek() const { return next_ < T_ ? next_ : INFINITY; }
    void advance() {
        ++k_;
        next_ = log_ ? std::exp(static_cast<double>(k_) * stride_) : static_cast<double>(k_ + 1) * stride_;
    }

private:
    double stride_;
    bool log_;
    double T_;
    double next_;
    std::uint64_t k_ = 0;
};

OccupationStats start_occupation(const SIVJPConfig& cfg) {
    OccupationStats occ = cfg.mu0;
    if (occ.hist) {
        const double scale = cfg.r / occ.weight();
        for (double& m : occ.hist->mass) m *= scale;
    }
    occ.r = cfg.r;
    occ.t = 0.0;
    return occ;
}

// Deterministic part of the run: position, velocity and occupation advance
// together; snapshots are taken along the way.
struct Cursor {
    double t = 0.0;
    double x = 0.0;
    int y = 1;
    OccupationStats occ;
    MomentTrace* trace;

    void advance_to(double t_new) {
        const double tau = t_new - t;
        if (tau > 0.0) {
            advect_in_place(occ, x, y, tau);
            x = wrap(x + y * tau);
        }
        t = t_new;
    }
    void record() {
        trace->times.push_back(t);
        trace->a_vals.push_back(occ.a);
        trace->b_vals.push_back(occ.b);
        trace->x_vals.push_back(x);
        trace->y_vals.push_back(y);
    }
    void advance_recording(double t_new, SnapshotClock& clock) {
        while (clock.peek() <= t_new) {
            advance_to(clock.peek());
            record();
            clock.advance();
        }
        advance_to(t_new);
    }
};

template <class Drift>
MomentTrace thinning_loop(const SIVJPConfig& cfg, double bound, Drift&& drift) {
    const auto wall0 = std::chrono::steady_clock::now();
    if (!(bound > 0.0) || !std::isfinite(bound)) throw ConfigError("run_sitp: invalid thinning bound");
    RandomStream rng(cfg.seed);
    MomentTrace trace;
    SnapshotClock clock(cfg);
    Cursor cur{0.0, cfg.z0.x.value(), cfg.z0.y, start_occupation(cfg), &trace};
    cur.record();
    const double lambda_min = cfg.model.lambda_min;
    for (;;) {
        const double dt = rng.exponential() / bound;
        const double u = rng.uniform();
        if (cur.t + dt >= cfg.T) {
            cur.advance_recording(cfg.T, clock);
            break;
        }
        if (++trace.n_proposals > cfg.max_proposals) {
            throw RunawayError("run_sitp: proposal count exceeded guard");
        }
        cur.advance_recording(cur.t + dt, clock);
        const double rate = lambda_min + std::max(0.0, cur.y * drift(cur.x, cur.occ));
        if (rate > bound * (1.0 + 1e-12)) {
            throw NumericError("run_sitp: jump rate exceeds thinning bound");
        }
        if (u * bound < rate) {
            cur.y = -cur.y;
            ++trace.n_events;
            if (cfg.record_jumps) trace.jump_times.push_back(cur.t);
        }
    }
    cur.record();
    trace.final = std::move(cur.occ);
    trace.final_state = {Angle(cur.x), cur.y};
    trace.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    return trace;
}

// rho = 0: the position process is the Markov telegraph process in U.
MomentTrace replay_markov(const SIVJPConfig& cfg) {
    const auto wall0 = std::chrono::steady_clock::now();
    const markov::FrozenPotential pot{cfg.model.U, cfg.model.dU, cfg.model.dU_sup};
    const auto log = markov::simulate_telegraph(pot, cfg.model.lambda_min, cfg.z0, cfg.T, cfg.seed,
                                                cfg.max_proposals);
    MomentTrace trace;
    SnapshotClock clock(cfg);
    Cursor cur{0.0, cfg.z0.x.value(), cfg.z0.y, start_occupation(cfg), &trace};
    cur.record();
    for (std::size_t i = 0; i < log.n_jumps(); ++i) {
        cur.advance_recording(log.jump_times[i], clock);
        cur.x = log.post_jump_states[i].x.value();
        cur.y = log.post_jump_states[i].y;
    }
    cur.advance_recording(cfg.T, clock);
    cur.record();
    trace.n_events = log.n_jumps();
    trace.n_proposals = log.n_proposals;
    if (cfg.record_jumps) trace.jump_times = log.jump_times;
    trace.final = std::move(cur.occ);
    trace.final_state = {Angle(cur.x), cur.y};
    trace.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
    return trace;
}

}  // namespace

MomentTrace run_sitp(const SIVJPConfig& cfg) {
    cfg.validate();
    if (cfg.model.rho == 0.0 && !cfg.thinning_bound) return replay_markov(cfg);
    const ModelSpec& model = cfg.model;
    const double bound = cfg.thinning_bound.value_or(model.lambda_min + model.dU_sup + std::abs(model.rho));
    return thinning_loop(cfg, bound, [&model](double x, const OccupationStats& occ) {
        return drift_Vprime(model, x, occ);
    });
}

GridKernel quadratic_kernel(const ModelSpec& model, const PeriodicGrid& grid) {
    const std::size_t n = grid.size();
    GridKernel k{grid, std::vector<double>(n * n), std::vector<double>(n * n)};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
            k.W[j * n + l] = model.W(grid.node(j), grid.node(l));
            k.dW[j * n + l] = model.dW(grid.node(j), grid.node(l));
        }
    }
    return k;
}

MomentTrace run_sitp_general(const GridKernel& kernel, const SIVJPConfig& cfg) {
    cfg.validate();
    const std::size_t n = kernel.grid.size();
    if (kernel.W.size() != n * n || kernel.dW.size() != n * n) {
        throw ConfigError("run_sitp_general: kernel size does not match its grid");
    }
    if (!cfg.mu0.hist || !(cfg.mu0.hist->grid == kernel.grid)) {
        throw ConfigError("run_sitp_general: mu0 must carry a histogram on the kernel grid");
    }
    double dW_max = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
            if (std::abs(kernel.W[j * n + l] - kernel.W[l * n + j]) > 1e-12) {
                throw ConfigError("run_sitp_general: kernel is not symmetric");
            }
            dW_max = std::max(dW_max, std::abs(kernel.dW[j * n + l]));
        }
    }
    const double min_bound = cfg.model.lambda_min + dW_max;
    const double bound = cfg.thinning_bound.value_or(cfg.model.lambda_min + markov::kSupMargin * dW_max);
    if (bound < min_bound) throw ConfigError("run_sitp_general: thinning bound below grid max of the rate");

    const double h = kernel.grid.spacing();
    const double* dW = kernel.dW.data();
    return thinning_loop(cfg, bound, [dW, n, h](double x, const OccupationStats& occ) {
        double c = x / h;
        std::size_t j = static_cast<std::size_t>(c);
        if (j >= n) j = n - 1;
        const double theta = c - static_cast<double>(j);
        const double* row0 = dW + j * n;
        const double* row1 = dW + ((j + 1) % n) * n;
        const std::vector<double>& mass = occ.hist->mass;
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            s0 += row0[k] * mass[k];
            s1 += row1[k] * mass[k];
        }
        return ((1.0 - theta) * s0 + theta * s1) / occ.weight();
    });
}

void write_csv(std::ostream& os, const MomentTrace& trace) {
    os << "t,a,b,x,y\n";
    char buf[128];
    for (std::size_t i = 0; i < trace.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%d\n", trace.times[i], trace.a_vals[i],
                      trace.b_vals[i], trace.x_vals[i], trace.y_vals[i]);
        os << buf;
    }
}

}  // namespace pdmp::sivjp
