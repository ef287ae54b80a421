#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pdmp/core/random.hpp"
#include "pdmp/markov/event_log.hpp"
#include "pdmp/markov/telegraph.hpp"

namespace pdmp::markov {

/// Smooth potential on T^d with its gradient and a bound on sup |grad V|.
struct TorusPotential {
    std::size_t dim = 1;
    std::function<double(const TorusVec&)> V;
    std::function<std::vector<double>(const TorusVec&)> grad;
    double grad_sup = 0.0;
};

/// Certifies sup |grad V| on a nodes_per_dim^d grid, times margin.
double certify_gradient_bound(const TorusPotential& pot, std::size_t nodes_per_dim,
                              double margin = kSupMargin);

/// Rotation-invariant velocity law with compact support.
struct VelocityLaw {
    std::function<std::vector<double>(RandomStream&)> sample;
    double speed_min = 0.0;
    double speed_max = 0.0;

    /// Uniform on the unit sphere of R^d; for d = 1 this is (delta_1 + delta_-1)/2.
    static VelocityLaw unit_sphere(std::size_t dim);
};

/// Uniform direction on the sphere of radius `radius` in R^d, drawn by
/// normalizing a vector of standard Gaussians.
std::vector<double> sample_sphere(RandomStream& rng, std::size_t dim, double radius);

/// Velocity jump process on T^d: jumps at rate |y||grad V| + y.grad V to a
/// uniform direction of the same speed, plus refreshment from q at rate
/// lambda_bar. Thinning bound lambda_bar + 2 * speed_max * grad_sup.
TorusVJPLog simulate_torus_vjp(const TorusPotential& pot, const VelocityLaw& q, double lambda_bar,
                               TorusVJPState z0, double T, SeedSpec seed,
                               std::uint64_t max_proposals = kMaxProposals);

}  // namespace pdmp::markov
