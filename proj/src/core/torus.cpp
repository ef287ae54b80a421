#include "pdmp/core/torus.hpp"

#include <cmath>
#include <string>

#include "pdmp/core/errors.hpp"

namespace pdmp {

double wrap(double x) {
    if (!std::isfinite(x)) {
        throw DomainError("wrap: non-finite angle " + std::to_string(x));
    }
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod of a tiny negative number plus 2pi can round up to exactly 2pi.
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double dist_T(Angle x, Angle z) {
    return 2.0 * std::abs(std::sin(0.5 * (x.value() - z.value())));
}

TorusVec::TorusVec(const std::vector<double>& coords) {
    coords_.reserve(coords.size());
    for (double c : coords) coords_.emplace_back(c);
}

TorusVec TorusVec::advanced(const std::vector<double>& velocity, double s) const {
    TorusVec out = *this;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        out.coords_[i] = Angle(coords_[i].value() + velocity[i] * s);
    }
    return out;
}

}  // namespace pdmp
