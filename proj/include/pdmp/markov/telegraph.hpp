#pragma once

#include <cstdint>

#include "pdmp/core/random.hpp"
#include "pdmp/markov/event_log.hpp"
#include "pdmp/markov/potential.hpp"

namespace pdmp::markov {

inline constexpr std::uint64_t kMaxProposals = 10'000'000'000ull;

/// Exact simulation of the telegraph process on the circle with flip rate
/// lambda_min + (y V'(x))_+, by thinning against lambda_min + dV_sup.
///
/// Random consumption per proposal is fixed (one exponential, one uniform),
/// which the self-interacting engine relies on to reproduce this path when
/// the interaction vanishes.
TelegraphLog simulate_telegraph(const FrozenPotential& pot, double lambda_min,
                                TelegraphState z0, double T, SeedSpec seed,
                                std::uint64_t max_proposals = kMaxProposals);

}  // namespace pdmp::markov
