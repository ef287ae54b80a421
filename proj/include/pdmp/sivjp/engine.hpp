#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "pdmp/core/random.hpp"
#include "pdmp/markov/event_log.hpp"
#include "pdmp/markov/telegraph.hpp"
#include "pdmp/sivjp/occupation.hpp"

namespace pdmp::sivjp {

using markov::TelegraphState;

struct SIVJPConfig {
    ModelSpec model;
    double r = 1.0;
    OccupationStats mu0 = initial_occupation(1.0, 0.0, 0.0);
    TelegraphState z0{};
    double T = 1.0;
    SeedSpec seed{};
    /// Snapshot interval in process time, or in log time when log_snapshots.
    double record_stride = 1.0;
    /// Snapshots at t = 0 and t = exp(k * record_stride), k >= 0.
    bool log_snapshots = false;
    /// Keep the accepted jump times in the trace.
    bool record_jumps = false;
    /// Overrides the default thinning bound; must dominate the rate.
    std::optional<double> thinning_bound;
    std::uint64_t max_proposals = markov::kMaxProposals;

    /// Throws ConfigError on r <= 0, T <= 0, stride <= 0, mu0 moments outside
    /// the unit disk or a velocity other than +-1.
    void validate() const;
};

struct MomentTrace {
    std::vector<double> times;
    std::vector<double> a_vals;
    std::vector<double> b_vals;
    std::vector<double> x_vals;
    std::vector<int> y_vals;
    OccupationStats final;
    TelegraphState final_state;
    std::uint64_t n_events = 0;
    std::uint64_t n_proposals = 0;
    double wall_time_s = 0.0;
    std::vector<double> jump_times;  // only with record_jumps

    std::size_t size() const noexcept { return times.size(); }
};

/// Exact simulation of the self-interacting telegraph process with the
/// quadratic interaction. Thinning bound lambda_min + dU_sup + |rho|.
/// rho = 0 delegates to markov::simulate_telegraph and replays its log.
MomentTrace run_sitp(const SIVJPConfig& cfg);

/// Grid kernel (row-major n x n, entry [j * n + k] = K(node_j, node_k)).
struct GridKernel {
    PeriodicGrid grid{kDensityNodes};
    std::vector<double> W;
    std::vector<double> dW;  // d/dx W(x, z) at (node_j, node_k)
};

/// Samples W and dW of the model's quadratic kernel on `grid`.
GridKernel quadratic_kernel(const ModelSpec& model, const PeriodicGrid& grid);

/// General-kernel engine: V'_mu(x) = sum_k dW(x, node_k) p_k with linear
/// interpolation in x, p the occupation histogram. Approximate: histogram
/// bias is O(grid spacing). cfg.mu0 must carry a histogram on the kernel's
/// grid. Default thinning bound lambda_min + 1.05 max |dW|.
MomentTrace run_sitp_general(const GridKernel& kernel, const SIVJPConfig& cfg);

/// CSV `t,a,b,x,y`, one row per snapshot.
void write_csv(std::ostream& os, const MomentTrace& trace);

}  // namespace pdmp::sivjp
