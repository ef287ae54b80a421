#include "pdmp/markov/telegraph.hpp"

#include <algorithm>
#include <cmath>

#include "pdmp/core/errors.hpp"

namespace pdmp::markov {

TelegraphLog simulate_telegraph(const FrozenPotential& pot, double lambda_min, TelegraphState z0,
                                double T, SeedSpec seed, std::uint64_t max_proposals) {
    if (!(lambda_min > 0.0)) throw ConfigError("simulate_telegraph: lambda_min must be positive");
    if (!(T > 0.0)) throw ConfigError("simulate_telegraph: horizon must be positive");
    if (z0.y != 1 && z0.y != -1) throw ConfigError("simulate_telegraph: velocity must be +1 or -1");
    const double bound = lambda_min + pot.dV_sup;
    if (!(bound > 0.0) || !std::isfinite(bound)) {
        throw ConfigError("simulate_telegraph: thinning bound must be positive and finite");
    }

    RandomStream rng(seed);
    TelegraphLog log;
    log.initial = z0;

    double t = 0.0;
    double x = z0.x.value();
    int y = z0.y;
    for (;;) {
        const double dt = rng.exponential() / bound;
        const double u = rng.uniform();
        if (t + dt >= T) {
            x = wrap(x + y * (T - t));
            t = T;
            break;
        }
        if (++log.n_proposals > max_proposals) {
            throw RunawayError("simulate_telegraph: proposal count exceeded guard");
        }
        t += dt;
        x = wrap(x + y * dt);
        const double rate = lambda_min + std::max(0.0, y * pot.dV(x));
        if (rate > bound) throw NumericError("simulate_telegraph: jump rate exceeds thinning bound");
        if (u * bound < rate) {
            y = -y;
            log.jump_times.push_back(t);
            log.post_jump_states.push_back({Angle(x), y});
        }
    }
    log.t_final = t;
    log.state_final = {Angle(x), y};
    return log;
}

}  // namespace pdmp::markov
