#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdmp/core/errors.hpp"
#include "pdmp/flow/flow.hpp"

using namespace pdmp;
using namespace pdmp::flow;
using sivjp::make_model;

namespace {

ModelSpec zero_at(double rho) { return make_model(sivjp::zero_potential(), rho); }

ModelSpec cos2_at(double rho) { return make_model(sivjp::cos2_potential(), rho); }

double norm(Vec2 p) { return std::hypot(p[0], p[1]); }

}  // namespace

TEST_CASE("equilibrium start stays put") {
    const auto tr = integrate_flow(zero_at(3.0), {0.0, 0.0}, 10.0);
    for (const auto& p : tr.points) REQUIRE(norm(p) < 1e-9);
    const double rc = equilibria::rho_c(cos2_at(1.0));
    const auto sinks = equilibria::find_fixed_points(cos2_at(2 * rc));
    const auto tr2 = integrate_flow(cos2_at(2 * rc), {sinks.back().a, sinks.back().b}, 10.0);
    for (const auto& p : tr2.points) REQUIRE(std::hypot(p[0] - sinks.back().a, p[1] - sinks.back().b) < 1e-9);
}

TEST_CASE("subcritical flow decays monotonically") {
    const auto tr = integrate_flow(zero_at(1.0), {0.1, 0.0}, 30.0);
    CHECK(tr.times.front() == 0.0);
    CHECK(tr.times.back() == doctest::Approx(30.0).epsilon(1e-14));
    for (std::size_t i = 1; i < tr.size(); ++i) REQUIRE(norm(tr.points[i]) < norm(tr.points[i - 1]));
    CHECK(norm(tr.final()) < 1e-4);
}

TEST_CASE("supercritical flow reaches the ring") {
    const auto tr = integrate_flow(zero_at(4.0), {0.1, 0.0}, 30.0);
    CHECK(std::abs(norm(tr.final()) - equilibria::solve_r_of_rho(4.0)) < 1e-6);
    CHECK(std::abs(tr.final()[1]) < 1e-12);
}

TEST_CASE("RK4 convergence order") {
    FlowOptions opts;
    opts.self_check = false;
    const ModelSpec m = zero_at(4.0);
    const Vec2 start{0.05, 0.02};
    const Vec2 ref = integrate_flow(m, start, 5.0, 0.0025, opts).final();
    auto err = [&](double dt) {
        const Vec2 p = integrate_flow(m, start, 5.0, dt, opts).final();
        return std::hypot(p[0] - ref[0], p[1] - ref[1]);
    };
    const double order = std::log2(err(0.1) / err(0.05));
    CHECK(order >= 3.5);
    CHECK(order <= 4.5);
}

TEST_CASE("self-check and argument errors") {
    FlowOptions tight;
    tight.self_check_tol = 1e-18;
    CHECK_THROWS_AS(integrate_flow(zero_at(4.0), {0.1, 0.0}, 5.0, 0.1, tight), NumericError);
    CHECK_THROWS_AS(integrate_flow(zero_at(4.0), {0.1, 0.0}, 5.0, 0.2), DomainError);
    CHECK_THROWS_AS(integrate_flow(zero_at(4.0), {0.1, 0.0}, 5.0, 0.0), DomainError);
    CHECK_THROWS_AS(integrate_flow(zero_at(4.0), {0.9, 0.9}, 5.0), DomainError);
    CHECK_THROWS_AS(integrate_flow(zero_at(4.0), {0.1, 0.0}, -1.0), DomainError);
    CHECK_NOTHROW(integrate_flow(zero_at(4.0), {1.0, 0.0}, 1.0));
}

TEST_CASE("pseudotrajectory error of the flow itself is tiny") {
    const ModelSpec m = zero_at(1.0);
    FlowOptions opts;
    opts.self_check = false;
    const double t_anchor = 2.0, window = 3.0;
    const FlowTrace fine = integrate_flow(m, {0.1, 0.0}, window, 0.001, opts);
    sivjp::MomentTrace sim;
    for (std::size_t i = 0; i < fine.size(); ++i) {
        sim.times.push_back(std::exp(t_anchor + fine.times[i]));
        sim.a_vals.push_back(fine.points[i][0]);
        sim.b_vals.push_back(fine.points[i][1]);
    }
    CHECK(pseudotrajectory_error(sim, m, t_anchor, window) < 1e-7);
    CHECK_THROWS_AS(pseudotrajectory_error(sim, m, 1.0, window), DomainError);
    CHECK_THROWS_AS(pseudotrajectory_error(sim, m, t_anchor, window + 0.5), DomainError);

    sivjp::MomentTrace sparse;
    for (int i = 0; i <= 20; ++i) {
        const std::size_t k = static_cast<std::size_t>(i) * (fine.size() - 1) / 20;
        sparse.times.push_back(sim.times[k]);
        sparse.a_vals.push_back(sim.a_vals[k]);
        sparse.b_vals.push_back(sim.b_vals[k]);
    }
    CHECK_THROWS_AS(pseudotrajectory_error(sparse, m, t_anchor, window), DomainError);
}

TEST_CASE("pseudotrajectory error at rho = 0") {
    sivjp::SIVJPConfig cfg;
    cfg.model = make_model(sivjp::zero_potential(), 0.0);
    cfg.model.lambda_min = 0.1;
    cfg.T = std::exp(8.0);
    cfg.record_stride = 0.01;
    cfg.log_snapshots = true;
    cfg.seed = SeedSpec{70, 0};
    cfg.z0 = {Angle(1.0), 1};
    const auto sim = sivjp::run_sitp(cfg);
    CHECK(pseudotrajectory_error(sim, cfg.model, 5.0, 3.0) < 0.1);
}

TEST_CASE("basins of the double-well flow") {
    const ModelSpec m = cos2_at(2 * equilibria::rho_c(cos2_at(1.0)));
    const double a_star = 0.8698531264085184;
    FlowOptions opts;
    opts.self_check = false;
    RandomStream rng(SeedSpec{71, 0});
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        const double r = std::sqrt(rng.uniform()), th = kTwoPi * rng.uniform();
        const Vec2 start{r * std::cos(th), r * std::sin(th)};
        if (std::abs(start[0]) < 1e-3) continue;
        const Vec2 end = integrate_flow(m, start, 100.0, kDefaultFlowStep, opts).final();
        const double target = start[0] > 0 ? a_star : -a_star;
        REQUIRE(std::hypot(end[0] - target, end[1]) < 1e-4);
        ++checked;
    }
    CHECK(checked > 90);
}

TEST_CASE("flow csv") {
    const auto tr = integrate_flow(zero_at(1.0), {0.5, 0.0}, 0.02);
    std::ostringstream os;
    write_csv(os, tr);
    const std::string out = os.str();
    CHECK(out.rfind("s,a,b\n0,0.5,0\n0.01,", 0) == 0);
    CHECK(std::count(out.begin(), out.end(), '\n') == 4);
}
