#include "pdmp/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "pdmp/core/errors.hpp"

namespace pdmp::harness {

sivjp::Potential PotentialConfig::build() const {
    if (kind == "zero") return sivjp::zero_potential();
    if (kind == "cos2") return sivjp::cos2_potential(beta);
    if (kind == "two_well") return sivjp::two_well_potential(a1, a2);
    if (kind == "custom_grid") {
        if (values.size() < 4 || values.size() % 2 != 0) {
            throw ConfigError("potential: custom_grid needs an even number (>= 4) of values");
        }
        return sivjp::custom_grid_potential(values);
    }
    throw ConfigError("potential: unknown kind '" + kind + "'");
}

namespace {

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void ExperimentConfig::validate() const {
    if (name.empty()) throw ConfigError("name must not be empty");
    potential.build();
    if (!finite(rho)) throw ConfigError("model.rho must be finite");
    if (!(lambda_min > 0.0) || !finite(lambda_min)) throw ConfigError("model.lambda_min must be positive");
    if (!(r > 0.0) || !finite(r)) throw ConfigError("sivjp.r must be positive");
    if (!finite(a0) || !finite(b0) || a0 * a0 + b0 * b0 > 1.0 + 1e-12) {
        throw ConfigError("sivjp.mu0 moments must lie in the closed unit disk");
    }
    if (x0 && !finite(*x0)) throw ConfigError("sivjp.z0.x must be finite");
    if (y0 != 1 && y0 != -1) throw ConfigError("sivjp.z0.y must be +1 or -1");
    if (!(T > 0.0) || !finite(T)) throw ConfigError("sivjp.T must be positive");
    if (!(record_stride > 0.0) || !finite(record_stride)) throw ConfigError("sivjp.record_stride must be positive");
    if (seeds < 1) throw ConfigError("sweep.seeds must be >= 1");
    for (double v : sweep_rho) {
        if (!finite(v)) throw ConfigError("sweep.rho values must be finite");
    }
    if (std::hypot(flow_start[0], flow_start[1]) > 1.0 + 1e-12) {
        throw ConfigError("flow.start must lie in the closed unit disk");
    }
    if (!(flow_T >= 0.0) || !finite(flow_T)) throw ConfigError("flow.T_flow must be >= 0");
    if (!(flow_dt > 0.0 && flow_dt <= 0.1)) throw ConfigError("flow.dt must lie in (0, 0.1]");
    if (!finite(localize_rho0)) throw ConfigError("localize.rho0 must be finite");
    if (!(localize_delta > 0.0) || !finite(localize_delta)) throw ConfigError("localize.delta must be positive");
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

sivjp::ModelSpec ExperimentConfig::model_at(double rho_value) const {
    return sivjp::make_model(potential.build(), rho_value, lambda_min);
}

sivjp::SIVJPConfig ExperimentConfig::sivjp_config(const sivjp::ModelSpec& model, std::uint64_t stream) const {
    sivjp::SIVJPConfig cfg;
    cfg.model = model;
    cfg.r = r;
    cfg.mu0 = sivjp::initial_occupation(r, a0, b0);
    double x = 0.0;
    if (x0) {
        x = *x0;
    } else {
        RandomStream rng(SeedSpec{master_seed, initial_position_stream(stream)});
        x = kTwoPi * rng.uniform();
    }
    cfg.z0 = {Angle(x), y0};
    cfg.T = T;
    cfg.seed = SeedSpec{master_seed, stream};
    cfg.record_stride = record_stride;
    cfg.log_snapshots = log_snapshots;
    cfg.validate();
    return cfg;
}

Json ExperimentConfig::to_json() const {
    Json pot = {{"kind", potential.kind}};
    if (potential.kind == "cos2") pot["beta"] = potential.beta;
    if (potential.kind == "two_well") {
        pot["a1"] = potential.a1;
        pot["a2"] = potential.a2;
    }
    if (potential.kind == "custom_grid") pot["values"] = potential.values;
    Json z0 = {{"x", nullptr}, {"y", y0}};
    if (x0) z0["x"] = *x0;
    return Json{
        {"name", name},
        {"model", {{"potential", pot}, {"rho", rho}, {"lambda_min", lambda_min}}},
        {"sivjp",
         {{"r", r},
          {"mu0", {{"a", a0}, {"b", b0}}},
          {"z0", z0},
          {"T", T},
          {"record_stride", record_stride},
          {"log_snapshots", log_snapshots}}},
        {"seed", master_seed},
        {"sweep", {{"rho", sweep_rho}, {"seeds", seeds}}},
        {"flow", {{"start", {flow_start[0], flow_start[1]}}, {"T_flow", flow_T}, {"dt", flow_dt}}},
        {"localize", {{"rho0", localize_rho0}, {"delta", localize_delta}}},
        {"output_dir", output_dir},
    };
}

namespace {

class Reader {
public:
    Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw ConfigError(where_ + " must be an object");
        for (auto it = j_.begin(); it != j_.end(); ++it) keys_.insert(it.key());
    }

    template <class T>
    void get(const char* key, T& out) {
        auto it = j_.find(key);
        if (it == j_.end()) return;
        keys_.erase(key);
        try {
            out = it->template get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ConfigError(path(key) + " has the wrong type");
        }
    }

    double number(const char* key, double fallback) {
        double v = fallback;
        auto it = j_.find(key);
        if (it != j_.end() && !it->is_number()) throw ConfigError(path(key) + " must be a number");
        get(key, v);
        return v;
    }

    const Json* child(const char* key) {
        auto it = j_.find(key);
        if (it == j_.end()) return nullptr;
        keys_.erase(key);
        return &*it;
    }

    std::string path(const char* key) const { return where_ + "." + key; }

    void finish() const {
        if (!keys_.empty()) throw ConfigError("unknown key '" + *keys_.begin() + "' in " + where_);
    }

private:
    const Json& j_;
    std::string where_;
    std::set<std::string> keys_;
};

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
    ExperimentConfig c;
    Reader top(j, "config");
    top.get("name", c.name);
    if (const Json* m = top.child("model")) {
        Reader rm(*m, "model");
        if (const Json* p = rm.child("potential")) {
            Reader rp(*p, "model.potential");
            rp.get("kind", c.potential.kind);
            c.potential.beta = rp.number("beta", c.potential.beta);
            c.potential.a1 = rp.number("a1", c.potential.a1);
            c.potential.a2 = rp.number("a2", c.potential.a2);
            rp.get("values", c.potential.values);
            rp.finish();
        }
        c.rho = rm.number("rho", c.rho);
        c.lambda_min = rm.number("lambda_min", c.lambda_min);
        rm.finish();
    }
    if (const Json* s = top.child("sivjp")) {
        Reader rs(*s, "sivjp");
        c.r = rs.number("r", c.r);
        if (const Json* mu = rs.child("mu0")) {
            Reader r0(*mu, "sivjp.mu0");
            c.a0 = r0.number("a", c.a0);
            c.b0 = r0.number("b", c.b0);
            r0.finish();
        }
        if (const Json* z = rs.child("z0")) {
            Reader rz(*z, "sivjp.z0");
            if (const Json* x = rz.child("x"); x && !x->is_null()) {
                if (!x->is_number()) throw ConfigError("sivjp.z0.x must be a number or null");
                c.x0 = x->get<double>();
            }
            rz.get("y", c.y0);
            rz.finish();
        }
        c.T = rs.number("T", c.T);
        c.record_stride = rs.number("record_stride", c.record_stride);
        rs.get("log_snapshots", c.log_snapshots);
        rs.finish();
    }
    if (const Json* seed = top.child("seed")) {
        if (!seed->is_number_unsigned()) throw ConfigError("config.seed must be a non-negative integer");
        c.master_seed = seed->get<std::uint64_t>();
    }
    if (const Json* sw = top.child("sweep")) {
        Reader rw(*sw, "sweep");
        rw.get("rho", c.sweep_rho);
        if (const Json* n = rw.child("seeds")) {
            if (!n->is_number_integer() || n->get<long long>() < 1) {
                throw ConfigError("sweep.seeds must be an integer >= 1");
            }
            c.seeds = n->get<std::size_t>();
        }
        rw.finish();
    }
    if (const Json* f = top.child("flow")) {
        Reader rf(*f, "flow");
        std::vector<double> start;
        rf.get("start", start);
        if (!start.empty()) {
            if (start.size() != 2) throw ConfigError("flow.start must have two entries");
            c.flow_start = {start[0], start[1]};
        }
        c.flow_T = rf.number("T_flow", c.flow_T);
        c.flow_dt = rf.number("dt", c.flow_dt);
        rf.finish();
    }
    if (const Json* l = top.child("localize")) {
        Reader rl(*l, "localize");
        c.localize_rho0 = rl.number("rho0", c.localize_rho0);
        c.localize_delta = rl.number("delta", c.localize_delta);
        rl.finish();
    }
    top.get("output_dir", c.output_dir);
    top.finish();
    c.validate();
    return c;
}

std::string ExperimentConfig::hash() const {
    Json j = to_json();
    j.erase("output_dir");
    const std::string text = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Json j;
    try {
        j = Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return ExperimentConfig::from_json(j);
}

}  // namespace pdmp::harness
