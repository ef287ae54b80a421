#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pdmp/equilibria/equilibria.hpp"
#include "pdmp/sivjp/engine.hpp"

namespace pdmp::harness {

using Json = nlohmann::ordered_json;

/// Registry entry: zero, cos2 (U = -beta cos 2z), two_well
/// (a1 cos z + a2 cos 2z) or custom_grid (trig interpolant of `values`).
struct PotentialConfig {
    std::string kind = "zero";
    double beta = 1.0;
    double a1 = 0.0;
    double a2 = 0.0;
    std::vector<double> values;

    sivjp::Potential build() const;
};

struct ExperimentConfig {
    std::string name = "experiment";

    PotentialConfig potential;
    double rho = 0.0;
    double lambda_min = 1.0;

    double r = 1.0;
    double a0 = 0.0;
    double b0 = 0.0;
    std::optional<double> x0;  // uniform from the seed stream when absent
    int y0 = 1;
    double T = 1e4;
    double record_stride = 0.01;
    bool log_snapshots = true;

    std::uint64_t master_seed = 0;
    std::size_t seeds = 1;
    std::vector<double> sweep_rho;

    equilibria::Vec2 flow_start{0.1, 0.0};
    double flow_T = 30.0;
    double flow_dt = 0.01;

    double localize_rho0 = 10.0;
    double localize_delta = 0.2;

    std::string output_dir = "out";

    /// Throws ConfigError on any invalid field.
    void validate() const;

    sivjp::ModelSpec model() const { return model_at(rho); }
    sivjp::ModelSpec model_at(double rho_value) const;

    /// Simulation config of one seed stream.
    sivjp::SIVJPConfig sivjp_config(const sivjp::ModelSpec& model, std::uint64_t stream) const;

    Json to_json() const;
    /// Unknown keys and wrong types are configuration errors.
    static ExperimentConfig from_json(const Json& j);

    /// FNV-1a of the canonical JSON without output_dir, as 16 hex digits.
    std::string hash() const;
};

/// Reads and parses a config file. IoError if unreadable, ConfigError if malformed.
ExperimentConfig load_config(const std::string& path);

/// Stream index reserved for drawing the initial position of run `stream`.
inline constexpr std::uint64_t initial_position_stream(std::uint64_t stream) { return stream | (1ull << 63); }

}  // namespace pdmp::harness
