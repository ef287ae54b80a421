#include <algorithm>
#include <cmath>
#include <filesystem>

#include "pdmp/core/errors.hpp"
#include "pdmp/harness/commands.hpp"
#include "pdmp/harness/pool.hpp"
#include "pdmp/markov/density.hpp"

namespace pdmp::harness {

namespace {

constexpr std::size_t kMinimaNodes = kThresholdNodes;
constexpr std::size_t kHistNodes = kDensityNodes;

// Index of the grid local minimum reached by walking downhill from node k.
std::size_t descend(const std::vector<double>& u, std::size_t k) {
    const std::size_t n = u.size();
    for (;;) {
        const std::size_t l = (k + n - 1) % n, r = (k + 1) % n;
        const std::size_t next = u[l] < u[r] ? l : r;
        if (!(u[next] < u[k])) return k;
        k = next;
    }
}

struct Basins {
    std::vector<LocalMinimum> minima;
    std::vector<int> label;  // per node of the minima grid, -1 if degenerate
};

Basins find_basins(const sivjp::Potential& pot) {
    const PeriodicGrid grid(kMinimaNodes);
    const std::size_t n = grid.size();
    std::vector<double> u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = pot.value(grid.node(k));

    Basins b;
    std::vector<int> id_of_node(n, -1);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t l = (k + n - 1) % n, r = (k + 1) % n;
        if (!(u[k] < u[l] && u[k] <= u[r])) continue;
        double lo = grid.node(k) - grid.spacing(), hi = grid.node(k) + grid.spacing();
        double x = grid.node(k);
        if (pot.deriv(lo) < 0.0 && pot.deriv(hi) > 0.0) {
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                (pot.deriv(mid) < 0.0 ? lo : hi) = mid;
            }
            x = 0.5 * (lo + hi);
        }
        const double h = 1e-5;
        const double u2 = (pot.deriv(x + h) - pot.deriv(x - h)) / (2.0 * h);
        if (!(u2 > 1e-6)) continue;
        id_of_node[k] = static_cast<int>(b.minima.size());
        b.minima.push_back({wrap(x), pot.value(x), u2, 0.0});
    }

    b.label.resize(n);
    for (std::size_t k = 0; k < n; ++k) b.label[k] = id_of_node[descend(u, k)];

    const GridDensity gibbs = markov::invariant_density(pot.value, grid);
    for (std::size_t k = 0; k < n; ++k) {
        if (b.label[k] >= 0) b.minima[b.label[k]].gibbs_weight += gibbs.values[k] * grid.spacing();
    }
    return b;
}

}  // namespace

std::vector<LocalMinimum> detect_local_minima(const sivjp::Potential& U) { return find_basins(U).minima; }

LocalizeResult cmd_localize(const ExperimentConfig& cfg, const RunContext& ctx) {
    cfg.validate();
    if (cfg.rho < cfg.localize_rho0) throw ConfigError("localize: rho must be >= localize.rho0");
    if (cfg.a0 != 0.0 || cfg.b0 != 0.0) {
        throw ConfigError("localize: runs start from the uniform histogram; mu0 must be (0, 0)");
    }
    const sivjp::Potential pot = cfg.potential.build();
    const Basins basins = find_basins(pot);
    if (basins.minima.empty()) throw ConfigError("localize: U has no non-degenerate local minimum");
    if (basins.minima.size() < 2) throw ConfigError("localize: U needs at least two local minima");
    const sivjp::ModelSpec model = cfg.model();
    std::vector<sivjp::SIVJPConfig> runs;
    const PeriodicGrid hist_grid(kHistNodes);
    for (std::uint64_t i = 0; i < cfg.seeds; ++i) {
        runs.push_back(cfg.sivjp_config(model, i));
        runs.back().mu0 = sivjp::uniform_occupation(cfg.r, hist_grid);
    }
    ensure_output_dir(cfg.output_dir);
    ctx.log("localize: " + std::to_string(basins.minima.size()) + " minima, " + std::to_string(cfg.seeds) +
            " seeds, rho = " + format_g(cfg.rho));

    const std::size_t m = basins.minima.size();
    const std::size_t stride = kMinimaNodes / kHistNodes;
    LocalizeResult res;
    res.minima = basins.minima;
    res.w.assign(runs.size(), std::vector<double>(m, 0.0));
    std::vector<std::vector<double>> frac(runs.size(), std::vector<double>(m, 0.0));
    parallel_for(runs.size(), ctx.threads, [&](std::size_t i) {
        const auto trace = sivjp::run_sitp(runs[i]);
        const std::vector<double> p = trace.final.histogram();
        for (std::size_t k = 0; k < p.size(); ++k) {
            const Angle z(hist_grid.node(k));
            for (std::size_t j = 0; j < m; ++j) {
                const double d = dist_T(z, Angle(res.minima[j].x0));
                res.w[i][j] += d * d * p[k];
            }
            const int lab = basins.label[k * stride];
            if (lab >= 0) frac[i][lab] += p[k];
        }
    });

    res.counts.assign(m, 0);
    res.mean_basin_fraction.assign(m, 0.0);
    std::string csv = "seed,minimum,x0,w,localized,basin_fraction\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const bool loc = res.w[i][j] < cfg.localize_delta;
            if (loc) ++res.counts[j];
            res.mean_basin_fraction[j] += frac[i][j] / static_cast<double>(runs.size());
            csv += std::to_string(i) + "," + std::to_string(j) + "," + format_g(res.minima[j].x0) + "," +
                   format_g(res.w[i][j]) + "," + (loc ? "1" : "0") + "," + format_g(frac[i][j]) + "\n";
        }
    }
    res.all_localized = std::all_of(res.counts.begin(), res.counts.end(), [](std::size_t c) { return c > 0; });

    Json mins = Json::array();
    for (std::size_t j = 0; j < m; ++j) {
        mins.push_back({{"index", j},
                        {"x0", res.minima[j].x0},
                        {"U", res.minima[j].U},
                        {"U2", res.minima[j].U2},
                        {"localized_count", res.counts[j]},
                        {"localized_fraction", static_cast<double>(res.counts[j]) / static_cast<double>(runs.size())},
                        {"mean_basin_fraction", res.mean_basin_fraction[j]},
                        {"gibbs_basin_weight", res.minima[j].gibbs_weight}});
    }
    Json out = {{"config_hash", cfg.hash()}, {"rho", cfg.rho}, {"delta", cfg.localize_delta},
                {"runs", runs.size()},       {"minima", mins}, {"all_minima_localized", res.all_localized}};
    const std::filesystem::path dir(cfg.output_dir);
    write_file((dir / "localize.csv").string(), csv);
    write_file((dir / "localize.json").string(), out.dump(2) + "\n");
    return res;
}

}  // namespace pdmp::harness
