#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "pdmp/core/errors.hpp"
#include "pdmp/harness/commands.hpp"

namespace pdmp::harness {

namespace fs = std::filesystem;
using equilibria::FixedPointRecord;
using equilibria::Stability;

void RunContext::log(const std::string& msg) const {
    if (!quiet) std::cerr << msg << '\n';
}

std::string to_string(Limit c) {
    switch (c) {
        case Limit::ConvergedToSink: return "converged-to-sink";
        case Limit::NearSaddle: return "near-saddle";
        case Limit::Unresolved: return "unresolved";
    }
    return "unresolved";
}

namespace {

bool tail_within(const sivjp::MomentTrace& trace, const FixedPointRecord& fp, double t_from) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace.times[i] < t_from) continue;
        if (fp.distance_to(trace.a_vals[i], trace.b_vals[i]) > kLimitRadius) return false;
    }
    return true;
}

}  // namespace

Limit classify_limit(const sivjp::MomentTrace& trace, const std::vector<FixedPointRecord>& census) {
    if (trace.size() == 0) return Limit::Unresolved;
    const double t_from = 0.9 * trace.times.back();
    for (const auto& fp : census) {
        if (fp.stability == Stability::Sink && tail_within(trace, fp, t_from)) return Limit::ConvergedToSink;
    }
    for (const auto& fp : census) {
        if (fp.stability == Stability::Saddle && tail_within(trace, fp, t_from)) return Limit::NearSaddle;
    }
    return Limit::Unresolved;
}

RunSummary summarize_run(std::uint64_t seed_index, const sivjp::MomentTrace& trace,
                         const std::vector<FixedPointRecord>& census) {
    RunSummary s;
    s.seed_index = seed_index;
    s.final_a = trace.final.a;
    s.final_b = trace.final.b;
    s.r_final = std::hypot(s.final_a, s.final_b);
    s.theta_final = s.r_final > 0.0 ? wrap(std::atan2(s.final_b, s.final_a)) : 0.0;
    s.nearest_fp_distance = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < census.size(); ++k) {
        const double d = census[k].distance_to(s.final_a, s.final_b);
        if (d < s.nearest_fp_distance) {
            s.nearest_fp_distance = d;
            s.nearest_fp = static_cast<int>(k);
        }
    }
    s.classification = classify_limit(trace, census);
    s.n_events = trace.n_events;
    s.n_proposals = trace.n_proposals;
    s.wall_time_s = trace.wall_time_s;
    return s;
}

Json to_json(const FixedPointRecord& fp) {
    return Json{
        {"a", fp.a},
        {"b", fp.b},
        {"residual", fp.residual},
        {"jac", {{fp.jacobian[0][0], fp.jacobian[0][1]}, {fp.jacobian[1][0], fp.jacobian[1][1]}}},
        {"eig_re", {fp.eig.re[0], fp.eig.re[1]}},
        {"eig_im", {fp.eig.im[0], fp.eig.im[1]}},
        {"stability", equilibria::to_string(fp.stability)},
        {"manifold", fp.manifold == equilibria::Manifold::Circle ? "circle" : "point"},
    };
}

Json to_json(const RunSummary& s, const std::string& config_hash) {
    return Json{
        {"seed_index", s.seed_index},
        {"final_a", s.final_a},
        {"final_b", s.final_b},
        {"final_r_polar", s.r_final},
        {"final_theta", s.theta_final},
        {"nearest_fp", s.nearest_fp},
        {"nearest_fp_distance", s.nearest_fp_distance},
        {"classification", to_string(s.classification)},
        {"n_events", s.n_events},
        {"n_proposals", s.n_proposals},
        {"config_hash", config_hash},
    };
}

Json thresholds(const sivjp::ModelSpec& model) {
    using namespace equilibria;
    const PeriodicGrid grid(kThresholdNodes);
    Json t = Json::object();
    if (centered_gibbs(model, grid)) {
        t["rho_c"] = rho_c(model, grid);
        t["rho_2"] = rho_2(model, grid);
    }
    if (model.rotation_invariant() && model.rho > 2.0) t["r_of_rho"] = solve_r_of_rho(model.rho);
    if (symmetric_about_a_axis(model, grid) && symmetric_about_b_axis(model, grid) && centered_gibbs(model, grid)) {
        const double a_star = positive_axis_root([&](double a) { return xi(model, a, grid); });
        const double b_star = positive_axis_root([&](double b) { return xi_b(model, b, grid); });
        if (a_star > 0.0) t["a_star"] = a_star;
        if (b_star > 0.0) t["b_star"] = b_star;
    }
    return t;
}

void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir);
    const fs::path probe = fs::path(dir) / ".write_probe";
    {
        std::ofstream out(probe);
        if (!out || !(out << "ok")) throw IoError("output directory is not writable: " + dir);
    }
    fs::remove(probe, ec);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

std::string format_g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace pdmp::harness
