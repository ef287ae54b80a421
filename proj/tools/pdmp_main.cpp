#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pdmp/core/errors.hpp"
#include "pdmp/harness/commands.hpp"

namespace {

enum Exit { kOk = 0, kFailed = 1, kConfig = 2, kIo = 3, kPartial = 4 };

struct Globals {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::size_t threads = 1;
    bool quiet = false;
};

pdmp::harness::ExperimentConfig resolve(const Globals& g) {
    if (g.config.empty()) throw pdmp::ConfigError("--config is required");
    auto cfg = pdmp::harness::load_config(g.config);
    if (g.seed) cfg.master_seed = *g.seed;
    if (g.out) cfg.output_dir = *g.out;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-interacting telegraph process experiments"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "Experiment config (JSON)");
    app.add_option("--seed", g.seed, "Master seed (overrides the config)");
    app.add_option("--out", g.out, "Output directory (overrides the config)");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", g.quiet, "No progress output");

    auto* simulate = app.add_subcommand("simulate", "Run the seed batch and summarize the limits");
    auto* fixed = app.add_subcommand("fixed-points", "Fixed-point census and thresholds");
    auto* flow = app.add_subcommand("flow", "Integrate the limiting flow from flow.start");
    auto* scan = app.add_subcommand("scan", "Census and seed batch for every sweep.rho");
    auto* localize = app.add_subcommand("localize", "Localization near each local minimum of U");
    auto* validate = app.add_subcommand("validate", "Built-in validation checks");
    for (auto* sub : {simulate, fixed, flow, scan, localize, validate}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    const pdmp::harness::RunContext ctx{g.threads, g.quiet};
    try {
        if (*validate) {
            const std::string dir = g.out ? *g.out : (g.config.empty() ? "." : resolve(g).output_dir);
            const bool ok = pdmp::harness::cmd_validate(dir, ctx);
            return ok ? kOk : kFailed;
        }
        const auto cfg = resolve(g);
        if (*simulate) pdmp::harness::cmd_simulate(cfg, ctx);
        if (*fixed) pdmp::harness::cmd_fixed_points(cfg, ctx);
        if (*flow) pdmp::harness::cmd_flow(cfg, ctx);
        if (*localize) pdmp::harness::cmd_localize(cfg, ctx);
        if (*scan) return pdmp::harness::cmd_scan(cfg, ctx).exit_code;
    } catch (const pdmp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const pdmp::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kOk;
}
