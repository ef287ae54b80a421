#include <cstdio>
#include <filesystem>
#include <sstream>

#include "pdmp/harness/commands.hpp"
#include "pdmp/harness/pool.hpp"

namespace pdmp::harness {

namespace fs = std::filesystem;

namespace {

std::string path_in(const std::string& dir, const std::string& file) { return (fs::path(dir) / file).string(); }

std::string trace_name(std::uint64_t seed) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "trace_%04llu.csv", static_cast<unsigned long long>(seed));
    return buf;
}

Json census_json(const std::vector<equilibria::FixedPointRecord>& census) {
    Json arr = Json::array();
    for (const auto& fp : census) arr.push_back(to_json(fp));
    return arr;
}

}  // namespace

SimulateResult cmd_simulate(const ExperimentConfig& cfg, const RunContext& ctx) {
    cfg.validate();
    const sivjp::ModelSpec model = cfg.model();
    std::vector<sivjp::SIVJPConfig> runs;
    for (std::uint64_t i = 0; i < cfg.seeds; ++i) runs.push_back(cfg.sivjp_config(model, i));

    SimulateResult res;
    res.census = equilibria::find_fixed_points(model);
    ensure_output_dir(cfg.output_dir);
    const std::string hash = cfg.hash();
    ctx.log("simulate: " + std::to_string(cfg.seeds) + " seeds, rho = " + format_g(cfg.rho));

    res.runs.resize(runs.size());
    parallel_for(runs.size(), ctx.threads, [&](std::size_t i) {
        const sivjp::MomentTrace trace = sivjp::run_sitp(runs[i]);
        std::ostringstream os;
        sivjp::write_csv(os, trace);
        write_file(path_in(cfg.output_dir, trace_name(i)), os.str());
        res.runs[i] = summarize_run(i, trace, res.census);
    });

    Json summary = Json::array();
    Json timing = Json::array();
    for (const auto& s : res.runs) {
        summary.push_back(to_json(s, hash));
        timing.push_back({{"seed_index", s.seed_index}, {"wall_time_s", s.wall_time_s}});
    }
    write_file(path_in(cfg.output_dir, "summary.json"), summary.dump(2) + "\n");
    Json fps = {{"config_hash", hash},
                {"name", cfg.name},
                {"rho", cfg.rho},
                {"fixed_points", census_json(res.census)}};
    write_file(path_in(cfg.output_dir, "fixed_points.json"), fps.dump(2) + "\n");
    write_file(path_in(cfg.output_dir, "timing.json"), timing.dump(2) + "\n");
    return res;
}

std::vector<equilibria::FixedPointRecord> cmd_fixed_points(const ExperimentConfig& cfg, const RunContext& ctx) {
    cfg.validate();
    const sivjp::ModelSpec model = cfg.model();
    const auto census = equilibria::find_fixed_points(model);
    const Json thr = thresholds(model);
    ensure_output_dir(cfg.output_dir);
    Json out = {{"config_hash", cfg.hash()},
                {"name", cfg.name},
                {"rho", cfg.rho},
                {"fixed_points", census_json(census)},
                {"thresholds", thr}};
    write_file(path_in(cfg.output_dir, "fixed_points.json"), out.dump(2) + "\n");
    ctx.log("fixed-points: " + std::to_string(census.size()) + " roots at rho = " + format_g(cfg.rho));
    return census;
}

flow::FlowTrace cmd_flow(const ExperimentConfig& cfg, const RunContext& ctx) {
    cfg.validate();
    const sivjp::ModelSpec model = cfg.model();
    const flow::FlowTrace trace = flow::integrate_flow(model, cfg.flow_start, cfg.flow_T, cfg.flow_dt);
    const auto census = equilibria::find_fixed_points(model);
    ensure_output_dir(cfg.output_dir);

    const equilibria::Vec2 end = trace.final();
    int nearest = -1;
    double dist = 0.0;
    for (std::size_t k = 0; k < census.size(); ++k) {
        const double d = census[k].distance_to(end[0], end[1]);
        if (nearest < 0 || d < dist) {
            nearest = static_cast<int>(k);
            dist = d;
        }
    }
    auto J = [&](const equilibria::Vec2& p) {
        return equilibria::free_energy_closed_form(model, equilibria::pibar(model, p[0], p[1]));
    };
    std::ostringstream os;
    flow::write_csv(os, trace);
    write_file(path_in(cfg.output_dir, "flow.csv"), os.str());
    Json out = {{"config_hash", cfg.hash()},
                {"rho", cfg.rho},
                {"start", {cfg.flow_start[0], cfg.flow_start[1]}},
                {"T_flow", cfg.flow_T},
                {"dt", cfg.flow_dt},
                {"final", {end[0], end[1]}},
                {"free_energy_start", J(cfg.flow_start)},
                {"free_energy_final", J(end)},
                {"nearest_fp", nearest},
                {"nearest_fp_distance", dist},
                {"fixed_points", census_json(census)}};
    write_file(path_in(cfg.output_dir, "flow.json"), out.dump(2) + "\n");
    ctx.log("flow: final (" + format_g(end[0]) + ", " + format_g(end[1]) + ")");
    return trace;
}

}  // namespace pdmp::harness
