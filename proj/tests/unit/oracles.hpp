#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// I_nu(x) by its power series.
inline double bessel_i(int nu, double x) {
    double term = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    for (int k = 1; k < 80; ++k) {
        term *= 0.25 * x * x / (k * static_cast<double>(k + nu));
        sum += term;
    }
    return sum;
}

// One-sample KS statistic against a continuous cdf.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

inline double tv_uniform(const std::vector<double>& masses) {
    double total = 0.0;
    for (double m : masses) total += m;
    const double u = 1.0 / static_cast<double>(masses.size());
    double tv = 0.0;
    for (double m : masses) tv += std::abs(m / total - u);
    return 0.5 * tv;
}

}  // namespace oracle
