#include "pdmp/sivjp/model.hpp"

#include <cmath>
#include <memory>

#include "pdmp/core/errors.hpp"
#include "pdmp/core/torus.hpp"

namespace pdmp::sivjp {

Potential zero_potential() {
    return {"zero", [](double) { return 0.0; }, [](double) { return 0.0; }};
}

Potential cos2_potential(double beta) {
    return {"cos2", [beta](double z) { return -beta * std::cos(2.0 * z); },
            [beta](double z) { return 2.0 * beta * std::sin(2.0 * z); }};
}

Potential two_well_potential(double a1, double a2) {
    return {"two_well", [a1, a2](double z) { return a1 * std::cos(z) + a2 * std::cos(2.0 * z); },
            [a1, a2](double z) { return -a1 * std::sin(z) - 2.0 * a2 * std::sin(2.0 * z); }};
}

namespace {

// Real trigonometric interpolant through m equispaced samples (m even), with
// the Nyquist cosine carried at half weight.
struct TrigInterpolant {
    double mean = 0.0;
    std::vector<double> ca, sb;  // k = 1 .. m/2 - 1
    double nyquist = 0.0;
    std::size_t half = 0;

    explicit TrigInterpolant(const std::vector<double>& v) {
        const std::size_t m = v.size();
        half = m / 2;
        ca.assign(half, 0.0);
        sb.assign(half, 0.0);
        for (std::size_t j = 0; j < m; ++j) mean += v[j];
        mean /= static_cast<double>(m);
        for (std::size_t k = 1; k < half; ++k) {
            for (std::size_t j = 0; j < m; ++j) {
                const double z = kTwoPi * static_cast<double>(j * k % m) / static_cast<double>(m);
                ca[k] += v[j] * std::cos(z);
                sb[k] += v[j] * std::sin(z);
            }
            ca[k] *= 2.0 / static_cast<double>(m);
            sb[k] *= 2.0 / static_cast<double>(m);
        }
        for (std::size_t j = 0; j < m; ++j) nyquist += (j % 2 == 0 ? v[j] : -v[j]);
        nyquist /= static_cast<double>(m);
    }

    double value(double z) const {
        double s = mean + nyquist * std::cos(static_cast<double>(half) * z);
        for (std::size_t k = 1; k < half; ++k) {
            const double kz = static_cast<double>(k) * z;
            s += ca[k] * std::cos(kz) + sb[k] * std::sin(kz);
        }
        return s;
    }

    double deriv(double z) const {
        const double nh = static_cast<double>(half);
        double s = -nh * nyquist * std::sin(nh * z);
        for (std::size_t k = 1; k < half; ++k) {
            const double kk = static_cast<double>(k);
            s += kk * (-ca[k] * std::sin(kk * z) + sb[k] * std::cos(kk * z));
        }
        return s;
    }
};

}  // namespace

Potential custom_grid_potential(const std::vector<double>& values) {
    if (values.size() < 4 || values.size() % 2 != 0) {
        throw ConfigError("custom_grid_potential: need an even number (>= 4) of samples");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw ConfigError("custom_grid_potential: non-finite sample");
    }
    auto interp = std::make_shared<const TrigInterpolant>(values);
    return {"custom_grid", [interp](double z) { return interp->value(z); },
            [interp](double z) { return interp->deriv(z); }};
}

double ModelSpec::W(double x, double z) const {
    return U(x) - rho * std::cos(x - z) + U(z);
}

double ModelSpec::dW(double x, double z) const {
    return dU(x) + rho * std::sin(x - z);
}

ModelSpec make_model(const Potential& U, double rho, double lambda_min) {
    if (!(lambda_min > 0.0)) throw ConfigError("make_model: lambda_min must be positive");
    if (!std::isfinite(rho)) throw ConfigError("make_model: rho must be finite");
    const auto frozen = markov::make_frozen_potential(U.value, U.deriv);
    return ModelSpec{frozen.V, frozen.dV, frozen.dV_sup, rho, lambda_min, U.name};
}

ModelSpec with_rho(const ModelSpec& model, double rho) {
    ModelSpec m = model;
    m.rho = rho;
    return m;
}

}  // namespace pdmp::sivjp
