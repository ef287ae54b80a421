#include "pdmp/sivjp/occupation.hpp"

#include <cmath>

#include "pdmp/core/errors.hpp"
#include "pdmp/markov/density.hpp"

namespace pdmp::sivjp {

std::vector<double> OccupationStats::histogram() const {
    if (!hist) throw DomainError("OccupationStats::histogram: no histogram tracked");
    std::vector<double> p = hist->mass;
    double total = 0.0;
    for (double m : p) total += m;
    for (double& v : p) v /= total;
    return p;
}

OccupationStats initial_occupation(double r, double a0, double b0) {
    return OccupationStats{r, 0.0, a0, b0, std::nullopt};
}

OccupationStats initial_occupation(double r, const PeriodicGrid& grid, const std::vector<double>& probs) {
    if (probs.size() != grid.size()) throw ConfigError("initial_occupation: histogram size mismatch");
    double total = 0.0, a = 0.0, b = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (!(probs[k] >= 0.0)) throw ConfigError("initial_occupation: negative probability");
        total += probs[k];
        a += probs[k] * std::cos(grid.node(k));
        b += probs[k] * std::sin(grid.node(k));
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("initial_occupation: probabilities must sum to 1");
    OccupationHistogram h{grid, std::vector<double>(probs.size())};
    for (std::size_t k = 0; k < probs.size(); ++k) h.mass[k] = r * probs[k];
    return OccupationStats{r, 0.0, a, b, std::move(h)};
}

OccupationStats uniform_occupation(double r, const PeriodicGrid& grid) {
    OccupationStats occ = initial_occupation(r, grid, std::vector<double>(grid.size(), 1.0 / static_cast<double>(grid.size())));
    occ.a = 0.0;
    occ.b = 0.0;
    return occ;
}

double drift_Vprime(const ModelSpec& model, double x, const OccupationStats& occ) {
    return model.dU(x) + model.rho * (occ.a * std::sin(x) - occ.b * std::cos(x));
}

void advect_in_place(OccupationStats& occ, double x0, int y, double tau) {
    if (!(tau > 0.0)) return;
    const double w = occ.weight();
    const double x1 = x0 + y * tau;
    // int_0^tau cos(x0 + y s) ds = y (sin x1 - sin x0); sin analogously.
    const double int_cos = y * (std::sin(x1) - std::sin(x0));
    const double int_sin = -y * (std::cos(x1) - std::cos(x0));
    occ.a = (w * occ.a + int_cos) / (w + tau);
    occ.b = (w * occ.b + int_sin) / (w + tau);
    occ.t += tau;
    if (occ.hist) markov::deposit_arc(occ.hist->mass, occ.hist->grid, x0, y, tau);
}

OccupationStats advect_occupation(const OccupationStats& occ, double x0, int y, double tau) {
    if (!(tau > 0.0)) throw DomainError("advect_occupation: tau must be positive");
    OccupationStats out = occ;
    advect_in_place(out, x0, y, tau);
    return out;
}

}  // namespace pdmp::sivjp
