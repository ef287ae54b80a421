// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "pdmp/equilibria/equilibria.hpp"
#include "pdmp/flow/flow.hpp"
#include "pdmp/harness/commands.hpp"
#include "pdmp/harness/pool.hpp"
#include "pdmp/markov/density.hpp"
#include "pdmp/markov/telegraph.hpp"

using namespace pdmp;
using harness::ExperimentConfig;
namespace fs = std::filesystem;
namespace eq = equilibria;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const harness::RunContext ctx{std::max(1u, std::thread::hardware_concurrency()), true};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("pdmp_acceptance_" + name);
    fs::remove_all(p);
    return p.string();
}

ExperimentConfig sitp_batch(const std::string& kind, double rho, std::size_t seeds, std::uint64_t master,
                            const std::string& name) {
    ExperimentConfig c;
    c.name = name;
    c.potential.kind = kind;
    c.rho = rho;
    c.lambda_min = 0.1;
    c.r = 1.0;
    c.T = 1e4;
    c.record_stride = 0.01;
    c.log_snapshots = true;
    c.master_seed = master;
    c.seeds = seeds;
    c.output_dir = scratch(name);
    return c;
}

double cos2_rho_c() { return eq::rho_c(sivjp::make_model(sivjp::cos2_potential(), 1.0)); }

Outcome invariant_measure() {
    const markov::FrozenPotential pot = markov::make_frozen_potential([](double x) { return std::cos(x); },
                                                                      [](double x) { return -std::sin(x); });
    const GridDensity target = markov::invariant_density(pot, PeriodicGrid(kDensityNodes));
    bool ok = true;
    std::string detail;
    for (std::uint64_t s = 0; s < 4; ++s) {
        const auto log = markov::simulate_telegraph(pot, 1.0, {Angle(0.0), 1}, 1e5, SeedSpec{1001, s});
        const double tv = markov::empirical_tv(log, target);
        const double vf = markov::positive_velocity_fraction(log);
        ok = ok && tv < 0.02 && std::abs(vf - 0.5) <= 0.01;
        detail += (s ? "; " : "") + fmt("tv %.4f", tv) + fmt(" vel %.4f", vf);
    }
    return {ok, detail};
}

std::vector<Outcome> subcritical_uniformity() {
    std::vector<Outcome> out;
    for (double rho : {0.5, 1.0, 1.9}) {
        const auto res = harness::cmd_simulate(sitp_batch("zero", rho, 20, 2002, "c2_" + fmt("%g", rho)), ctx);
        int small = 0;
        std::vector<double> radii;
        for (const auto& r : res.runs) {
            small += r.r_final < 0.05;
            radii.push_back(r.r_final);
        }
        std::sort(radii.begin(), radii.end());
        out.push_back({small >= 18, fmt("rho = %g: ", rho) + std::to_string(small) + "/20 with radius < 0.05" +
                                        fmt(", median radius %.4f", radii[10])});
    }
    return out;
}

Outcome supercritical_localization() {
    const auto res = harness::cmd_simulate(sitp_batch("zero", 4.0, 20, 3003, "c3"), ctx);
    const double r4 = eq::solve_r_of_rho(4.0);
    int near = 0;
    std::set<int> quadrants;
    for (const auto& r : res.runs) {
        near += std::abs(r.r_final - r4) < 0.05;
        quadrants.insert(static_cast<int>(r.theta_final / (kTwoPi / 4)) % 4);
    }
    return {near >= 18 && quadrants.size() >= 3,
            std::to_string(near) + "/20 within 0.05 of r(4), " + std::to_string(quadrants.size()) + " quadrants"};
}

Outcome threshold_constant() {
    const double i0 = oracle::bessel_i(0, 1.0), i1 = oracle::bessel_i(1, 1.0);
    const double oracle_rc = 2 * i0 / (i0 + i1);
    const double rc = cos2_rho_c();
    return {std::abs(rc - oracle_rc) < 1e-8, fmt("rho_c %.15g", rc) + fmt(", |diff| %.2e", std::abs(rc - oracle_rc))};
}

struct DoubleWell {
    Outcome pitchfork;
    Outcome saddle;
};

DoubleWell double_well() {
    const double rc = cos2_rho_c();
    const auto sub = harness::cmd_simulate(sitp_batch("cos2", 0.8 * rc, 20, 5005, "c5_sub"), ctx);
    int small = 0;
    for (const auto& r : sub.runs) small += r.r_final < 0.05;

    const ExperimentConfig sup_cfg = sitp_batch("cos2", 2 * rc, 30, 5006, "c5_sup");
    const auto sup = harness::cmd_simulate(sup_cfg, ctx);
    const double a_star = eq::positive_axis_root([&](double a) { return eq::xi(sup_cfg.model(), a); });
    int plus = 0, minus = 0, saddle = 0;
    for (const auto& r : sup.runs) {
        plus += std::hypot(r.final_a - a_star, r.final_b) < 0.05;
        minus += std::hypot(r.final_a + a_star, r.final_b) < 0.05;
        saddle += r.classification == harness::Limit::NearSaddle;
    }
    DoubleWell d;
    d.pitchfork = {small >= 18 && plus + minus >= 27 && plus >= 5 && minus >= 5,
                   "0.8 rho_c: " + std::to_string(small) + "/20 with radius < 0.05; 2 rho_c: " +
                       std::to_string(plus) + " near +a*, " + std::to_string(minus) + " near -a* of 30"};
    d.saddle = {saddle == 0, std::to_string(saddle) + "/30 near-saddle at 2 rho_c"};
    return d;
}

Outcome census_scan() {
    const sivjp::ModelSpec base = sivjp::make_model(sivjp::cos2_potential(), 1.0);
    const double rc = eq::rho_c(base), r2 = eq::rho_2(base);
    const double step = 4.5 / 49.0;
    std::size_t prev = 0;
    std::vector<std::pair<double, std::size_t>> changes;
    bool monotone = true;
    for (int k = 0; k < 50; ++k) {
        const double rho = 0.5 + k * step;
        const std::size_t n = eq::find_fixed_points(sivjp::with_rho(base, rho)).size();
        if (k == 0 && n != 1) monotone = false;
        if (k > 0 && n != prev) changes.emplace_back(rho, n);
        prev = n;
    }
    bool ok = monotone && changes.size() == 2 && prev == 5;
    std::string detail = "transitions:";
    for (std::size_t i = 0; i < changes.size(); ++i) {
        const double thr = i == 0 ? rc : r2;
        ok = ok && changes[i].second == (i == 0 ? 3u : 5u) && std::abs(changes[i].first - thr) <= step;
        detail += fmt(" %.4f", changes[i].first) + " -> " + std::to_string(changes[i].second);
    }
    return {ok, detail + fmt(" (rho_c %.4f", rc) + fmt(", rho_2 %.4f)", r2)};
}

Outcome jacobian() {
    RandomStream rng(SeedSpec{8008, 0});
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double kind = rng.uniform();
        const double rho = 40.0 * rng.uniform() - 5.0;
        const sivjp::ModelSpec m =
            kind < 0.33 ? sivjp::make_model(sivjp::zero_potential(), rho)
            : kind < 0.66 ? sivjp::make_model(sivjp::cos2_potential(2 * rng.uniform()), rho)
                          : sivjp::make_model(sivjp::two_well_potential(rng.normal(), rng.normal()), rho);
        const double a = 1.6 * rng.uniform() - 0.8, b = 1.6 * rng.uniform() - 0.8;
        const eq::Mat2 J = eq::jacobian_Fbar(m, a, b);
        const eq::Vec2 pa = eq::Fbar(m, a + h, b), ma = eq::Fbar(m, a - h, b);
        const eq::Vec2 pb = eq::Fbar(m, a, b + h), mb = eq::Fbar(m, a, b - h);
        for (int r = 0; r < 2; ++r) {
            worst = std::max(worst, std::abs(J[r][0] - (pa[r] - ma[r]) / (2 * h)));
            worst = std::max(worst, std::abs(J[r][1] - (pb[r] - mb[r]) / (2 * h)));
        }
    }
    double diag = 0.0;
    for (double rho : {0.5, 2.0, 4.0, 13.0}) {
        const eq::Mat2 J = eq::jacobian_Fbar(sivjp::make_model(sivjp::zero_potential(), rho), 0.0, 0.0);
        diag = std::max({diag, std::abs(J[0][0] - (rho / 2 - 1)), std::abs(J[1][1] - (rho / 2 - 1)), std::abs(J[0][1]),
                         std::abs(J[1][0])});
    }
    return {worst < 1e-6 && diag < 1e-12, fmt("max fd error %.2e", worst) + fmt(", origin diag error %.2e", diag)};
}

Outcome pseudotrajectory() {
    ExperimentConfig c = sitp_batch("zero", 4.0, 20, 9009, "c9");
    c.T = std::exp(8.05);
    const sivjp::ModelSpec m = c.model();
    std::vector<double> early(20), late(20);
    harness::parallel_for(20, ctx.threads, [&](std::size_t s) {
        const auto tr = sivjp::run_sitp(c.sivjp_config(m, s));
        early[s] = flow::pseudotrajectory_error(tr, m, 3.0, 2.0);
        late[s] = flow::pseudotrajectory_error(tr, m, 6.0, 2.0);
    });
    int dec = 0;
    for (int s = 0; s < 20; ++s) dec += late[s] < early[s];
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return 0.5 * (v[9] + v[10]);
    };
    const double me = median(early), ml = median(late);
    return {ml < me && dec >= 16,
            fmt("median %.4f", me) + fmt(" -> %.4f", ml) + ", " + std::to_string(dec) + "/20 seeds decrease"};
}

Outcome laplace() {
    const double theta = 0.7;
    const PeriodicGrid grid(kThresholdNodes);
    auto f = [theta](double z) { return 1.0 - std::cos(z - theta); };
    std::vector<double> rel;
    for (double pr : {50.0, 100.0, 200.0, 400.0}) {
        const auto [q, asym] = eq::laplace_check(f, 1.0, theta, pr, grid);
        rel.push_back(std::abs(q - asym) / std::abs(asym));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < rel.size(); ++i) monotone = monotone && rel[i] < rel[i - 1];
    const double slope = std::log(rel[0] / rel[3]) / std::log(8.0);
    return {monotone && rel[2] < 0.02 && slope >= 0.7 && slope <= 1.3,
            fmt("rel %.4g", rel[0]) + fmt(" %.4g", rel[1]) + fmt(" %.4g", rel[2]) + fmt(" %.4g", rel[3]) +
                fmt(", exponent %.3f", slope)};
}

Outcome free_energy_limit() {
    const sivjp::ModelSpec base = sivjp::make_model(sivjp::two_well_potential(0.2, 0.5), 1.0);
    const auto minima = harness::detect_local_minima(sivjp::two_well_potential(0.2, 0.5));
    const auto deepest = std::min_element(minima.begin(), minima.end(),
                                          [](const auto& p, const auto& q) { return p.U < q.U; });
    const double x0 = deepest->x0;
    const PeriodicGrid grid(kThresholdNodes);
    double consistency = 0.0;
    auto J = [&](const sivjp::ModelSpec& m, double a, double b) {
        const GridDensity d = eq::pibar(m, a, b, grid);
        consistency = std::max(consistency, std::abs(eq::free_energy_closed_form(m, d) -
                                                     eq::free_energy_double_quadrature(m, d)));
        return eq::free_energy_closed_form(m, d);
    };
    const sivjp::ModelSpec m = sivjp::with_rho(base, 200.0);
    const double j_ref = J(m, std::cos(x0), std::sin(x0));
    double num = 0.0, den = 0.0;
    for (double r : {0.5, 0.8, 1.0}) {
        for (int k = 0; k < 8; ++k) {
            const double th = x0 + kTwoPi * k / 8;
            const double val = J(m, r * std::cos(th), r * std::sin(th)) - j_ref;
            const double tgt = m.U(th) - m.U(x0) + 0.5 * (1 / r - 1 + std::log(r));
            num = std::max(num, std::abs(val - tgt));
            den = std::max(den, std::abs(tgt));
        }
    }
    const double rel = num / den;
    return {rel < 0.02 && consistency < 1e-8,
            fmt("relative error %.4f at rho = 200", rel) + fmt(", closed form vs double quadrature %.2e", consistency)};
}

Outcome multi_well() {
    bool ok = true;
    std::string detail;
    for (std::uint64_t master : {17u, 18u, 19u}) {
        ExperimentConfig c = harness::load_config(std::string(PDMP_SOURCE_DIR) + "/configs/localize_two_well.json");
        c.master_seed = master;
        c.output_dir = scratch("c12_" + std::to_string(master));
        const auto res = harness::cmd_localize(c, ctx);
        ok = ok && res.all_localized;
        detail += (detail.empty() ? "" : "; ") + std::string("seed ") + std::to_string(master) + " counts";
        for (std::size_t n : res.counts) detail += " " + std::to_string(n);
    }
    return {ok, detail + " of 50"};
}

Outcome engine_exactness() {
    const sivjp::ModelSpec m = sivjp::make_model(sivjp::zero_potential(), 4.0, 0.1);
    const sivjp::GridKernel k = sivjp::quadratic_kernel(m, PeriodicGrid(512));
    ExperimentConfig c = sitp_batch("zero", 4.0, 5, 13013, "c13");
    c.T = 1e3;
    c.log_snapshots = false;
    c.record_stride = 1.0;
    double worst = 0.0;
    std::string detail;
    for (std::uint64_t s = 0; s < 5; ++s) {
        sivjp::SIVJPConfig cfg = c.sivjp_config(m, s);
        cfg.thinning_bound = m.lambda_min + m.dU_sup + std::abs(m.rho);
        const auto exact = sivjp::run_sitp(cfg);
        cfg.mu0 = sivjp::uniform_occupation(cfg.r, k.grid);
        const auto grid = sivjp::run_sitp_general(k, cfg);
        double sup = 0.0;
        for (std::size_t i = 0; i < std::min(exact.size(), grid.size()); ++i) {
            sup = std::max(sup, std::hypot(exact.a_vals[i] - grid.a_vals[i], exact.b_vals[i] - grid.b_vals[i]));
        }
        if (exact.size() != grid.size()) sup = INFINITY;
        worst = std::max(worst, sup);
        detail += (s ? "" : "sup per seed") + fmt(" %.3g", sup);
    }
    return {worst < 0.02, detail};
}

std::map<std::string, std::string> outputs(const std::string& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().filename() == "timing.json") continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        out[e.path().filename().string()] = os.str();
    }
    return out;
}

Outcome determinism() {
    std::map<std::string, std::string> ref;
    bool ok = true;
    int n = 0;
    for (std::size_t threads : {1u, 1u, 4u, 8u}) {
        ExperimentConfig c = sitp_batch("cos2", 3.0, 8, 14014, "c14");
        c.T = 2e3;
        c.output_dir = scratch("c14_" + std::to_string(n++));
        harness::cmd_simulate(c, harness::RunContext{threads, true});
        const auto got = outputs(c.output_dir);
        if (ref.empty()) ref = got;
        ok = ok && got == ref;
    }
    return {ok && ref.size() == 10, std::to_string(ref.size()) + " files compared over 2 repeats and threads 1, 4, 8"};
}

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("criterion %2d %s: %s (%s) [%.0fs]\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
}

}  // namespace

int main() {
    report(1, "invariant measure", invariant_measure);
    report(2, "subcritical uniformity", [] {
        const auto parts = subcritical_uniformity();
        Outcome o{true, ""};
        for (const auto& p : parts) {
            std::printf("  %s %s\n", p.pass ? "pass" : "fail", p.detail.c_str());
            o.pass = o.pass && p.pass;
        }
        o.detail = std::to_string(std::count_if(parts.begin(), parts.end(), [](const Outcome& p) { return p.pass; })) +
                   "/3 rho values";
        return o;
    });
    report(3, "supercritical localization", supercritical_localization);
    report(4, "threshold constant", threshold_constant);
    DoubleWell dw;
    report(5, "double-well pitchfork", [&] {
        dw = double_well();
        return dw.pitchfork;
    });
    report(6, "saddle avoidance", [&] { return dw.saddle.detail.empty() ? Outcome{false, "criterion 5 batch did not run"} : dw.saddle; });
    report(7, "fixed-point census", census_scan);
    report(8, "Jacobian", jacobian);
    report(9, "pseudotrajectory decay", pseudotrajectory);
    report(10, "Laplace asymptotics", laplace);
    report(11, "free-energy limit", free_energy_limit);
    report(12, "multi-well localization", multi_well);
    report(13, "engine exactness", engine_exactness);
    report(14, "determinism", determinism);
    std::printf("%d of 14 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
