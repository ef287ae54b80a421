#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pdmp/flow/flow.hpp"
#include "pdmp/harness/config.hpp"

namespace pdmp::harness {

struct RunContext {
    std::size_t threads = 1;
    bool quiet = false;

    void log(const std::string& msg) const;
};

enum class Limit { ConvergedToSink, NearSaddle, Unresolved };

std::string to_string(Limit c);

struct RunSummary {
    std::uint64_t seed_index = 0;
    double final_a = 0.0;
    double final_b = 0.0;
    double r_final = 0.0;
    double theta_final = 0.0;
    int nearest_fp = -1;
    double nearest_fp_distance = 0.0;
    Limit classification = Limit::Unresolved;
    std::uint64_t n_events = 0;
    std::uint64_t n_proposals = 0;
    double wall_time_s = 0.0;
};

inline constexpr double kLimitRadius = 0.05;

/// converged-to-sink if every snapshot with t >= 0.9 T lies within
/// kLimitRadius of one census Sink, near-saddle if within kLimitRadius of one
/// Saddle, unresolved otherwise.
Limit classify_limit(const sivjp::MomentTrace& trace, const std::vector<equilibria::FixedPointRecord>& census);

RunSummary summarize_run(std::uint64_t seed_index, const sivjp::MomentTrace& trace,
                         const std::vector<equilibria::FixedPointRecord>& census);

Json to_json(const equilibria::FixedPointRecord& fp);
Json to_json(const RunSummary& s, const std::string& config_hash);

/// rho_c, rho_2, r_of_rho, a_star, b_star where they apply.
Json thresholds(const sivjp::ModelSpec& model);

/// Creates the directory and checks it is writable (IoError otherwise).
void ensure_output_dir(const std::string& dir);
void write_file(const std::string& path, const std::string& content);
std::string format_g(double x);
std::string csv_field(const std::string& s);

struct SimulateResult {
    std::vector<equilibria::FixedPointRecord> census;
    std::vector<RunSummary> runs;
};

/// trace_XXXX.csv per seed, summary.json, fixed_points.json, timing.json.
SimulateResult cmd_simulate(const ExperimentConfig& cfg, const RunContext& ctx);

/// fixed_points.json with the census and thresholds record.
std::vector<equilibria::FixedPointRecord> cmd_fixed_points(const ExperimentConfig& cfg, const RunContext& ctx);

/// flow.csv and flow.json.
flow::FlowTrace cmd_flow(const ExperimentConfig& cfg, const RunContext& ctx);

struct ScanRow {
    double rho = 0.0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string status;
    RunSummary run;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::size_t n_ok = 0;
    /// 0 if at least 90% of rows succeeded, 4 otherwise.
    int exit_code = 0;
};

/// 0 if at least 90% of the rows succeeded, 4 otherwise.
int sweep_exit_code(std::size_t n_ok, std::size_t n_rows);

/// scan.csv (tidy, one row per (rho, seed)), scan_fixed_points.json, scan_theta.json.
ScanResult cmd_scan(const ExperimentConfig& cfg, const RunContext& ctx);

struct LocalMinimum {
    double x0 = 0.0;
    double U = 0.0;
    double U2 = 0.0;
    double gibbs_weight = 0.0;
};

/// Non-degenerate local minima of U and the e^{-U} mass of each basin.
std::vector<LocalMinimum> detect_local_minima(const sivjp::Potential& U);

struct LocalizeResult {
    std::vector<LocalMinimum> minima;
    std::vector<std::size_t> counts;        // runs with w(x0) < delta
    std::vector<double> mean_basin_fraction;
    /// w[seed][minimum]
    std::vector<std::vector<double>> w;
    bool all_localized = false;
};

/// localize.csv and localize.json.
LocalizeResult cmd_localize(const ExperimentConfig& cfg, const RunContext& ctx);

struct ValidateOptions {
    /// Node count of the periodic-exactness check; anything but a valid grid
    /// makes that check fail.
    std::size_t quadrature_nodes = 32;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<CheckResult> run_checks(const ValidateOptions& opts = {});
Json validation_report(const std::vector<CheckResult>& checks);

/// validate.json; returns true iff all checks pass.
bool cmd_validate(const std::string& output_dir, const RunContext& ctx, const ValidateOptions& opts = {});

}  // namespace pdmp::harness
