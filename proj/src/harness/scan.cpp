#include <algorithm>
#include <filesystem>
#include <optional>

#include "pdmp/core/errors.hpp"
#include "pdmp/harness/commands.hpp"
#include "pdmp/harness/pool.hpp"

namespace pdmp::harness {

namespace {

// One-sample Kolmogorov-Smirnov statistic of theta / 2 pi against U(0, 1).
double ks_uniform(std::vector<double> theta) {
    std::sort(theta.begin(), theta.end());
    const double n = static_cast<double>(theta.size());
    double d = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double u = theta[i] / kTwoPi;
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - u, u - static_cast<double>(i) / n});
    }
    return d;
}

struct Census {
    std::optional<std::vector<equilibria::FixedPointRecord>> points;
    Json thresholds;
    std::string error;
};

}  // namespace

int sweep_exit_code(std::size_t n_ok, std::size_t n_rows) { return n_rows > 0 && 10 * n_ok >= 9 * n_rows ? 0 : 4; }

ScanResult cmd_scan(const ExperimentConfig& cfg, const RunContext& ctx) {
    cfg.validate();
    if (cfg.sweep_rho.empty()) throw ConfigError("scan: sweep.rho must not be empty");
    std::vector<sivjp::ModelSpec> models;
    for (double rho : cfg.sweep_rho) models.push_back(cfg.model_at(rho));
    ensure_output_dir(cfg.output_dir);
    const std::string hash = cfg.hash();
    const std::size_t n_rho = models.size();
    const std::size_t n_seed = cfg.seeds;

    std::vector<Census> census(n_rho);
    parallel_for(n_rho, ctx.threads, [&](std::size_t k) {
        try {
            census[k].points = equilibria::find_fixed_points(models[k]);
            census[k].thresholds = thresholds(models[k]);
        } catch (const std::exception& e) {
            census[k].points.reset();
            census[k].error = e.what();
        }
    });
    ctx.log("scan: census done for " + std::to_string(n_rho) + " rho values");

    ScanResult res;
    res.rows.resize(n_rho * n_seed);
    parallel_for(res.rows.size(), ctx.threads, [&](std::size_t i) {
        const std::size_t k = i / n_seed;
        const std::uint64_t seed = i % n_seed;
        ScanRow& row = res.rows[i];
        row.rho = cfg.sweep_rho[k];
        row.seed = seed;
        if (!census[k].points) {
            row.status = "error: census failed: " + census[k].error;
            return;
        }
        try {
            const auto trace = sivjp::run_sitp(cfg.sivjp_config(models[k], seed));
            row.run = summarize_run(seed, trace, *census[k].points);
            row.ok = true;
            row.status = "ok";
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
    });

    std::string csv = "rho,seed,a_final,b_final,r_final,nearest_fp,dist,theta_final,classification,status\n";
    for (const auto& row : res.rows) {
        csv += format_g(row.rho) + "," + std::to_string(row.seed) + ",";
        if (row.ok) {
            const RunSummary& s = row.run;
            csv += format_g(s.final_a) + "," + format_g(s.final_b) + "," + format_g(s.r_final) + "," +
                   std::to_string(s.nearest_fp) + "," + format_g(s.nearest_fp_distance) + "," +
                   format_g(s.theta_final) + "," + to_string(s.classification) + ",";
            ++res.n_ok;
        } else {
            csv += ",,,,,,,";
        }
        csv += csv_field(row.status) + "\n";
    }
    write_file((std::filesystem::path(cfg.output_dir) / "scan.csv").string(), csv);

    Json cj = Json::array();
    Json theta = Json::array();
    for (std::size_t k = 0; k < n_rho; ++k) {
        Json entry = {{"rho", cfg.sweep_rho[k]}};
        if (census[k].points) {
            Json arr = Json::array();
            for (const auto& fp : *census[k].points) arr.push_back(to_json(fp));
            entry["fixed_points"] = arr;
            entry["thresholds"] = census[k].thresholds;
        } else {
            entry["error"] = census[k].error;
        }
        cj.push_back(entry);

        std::vector<double> th;
        for (std::size_t s = 0; s < n_seed; ++s) {
            const ScanRow& row = res.rows[k * n_seed + s];
            if (row.ok) th.push_back(row.run.theta_final);
        }
        Json t = {{"rho", cfg.sweep_rho[k]}, {"n", th.size()}};
        t["ks_statistic"] = th.empty() ? Json(nullptr) : Json(ks_uniform(th));
        theta.push_back(t);
    }
    const std::string dir = cfg.output_dir;
    write_file((std::filesystem::path(dir) / "scan_fixed_points.json").string(),
               Json{{"config_hash", hash}, {"census", cj}}.dump(2) + "\n");
    write_file((std::filesystem::path(dir) / "scan_theta.json").string(),
               Json{{"config_hash", hash}, {"informational", true}, {"theta_uniformity", theta}}.dump(2) + "\n");

    res.exit_code = sweep_exit_code(res.n_ok, res.rows.size());
    ctx.log("scan: " + std::to_string(res.n_ok) + "/" + std::to_string(res.rows.size()) + " rows ok");
    return res;
}

}  // namespace pdmp::harness
