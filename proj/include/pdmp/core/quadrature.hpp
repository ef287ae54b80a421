#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "pdmp/core/torus.hpp"

namespace pdmp {

/// Uniform periodic grid with nodes 2*pi*k/n. n must be even and >= 4.
class PeriodicGrid {
public:
    explicit PeriodicGrid(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return kTwoPi / static_cast<double>(n_); }
    double node(std::size_t k) const noexcept {
        return kTwoPi * static_cast<double>(k) / static_cast<double>(n_);
    }

    friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

private:
    std::size_t n_;
};

inline constexpr std::size_t kDensityNodes = 512;
inline constexpr std::size_t kThresholdNodes = 4096;

/// Periodic trapezoidal rule (2pi/n) * sum_k f(node_k). Spectrally accurate
/// for smooth periodic f; exact for trigonometric polynomials of degree < n.
double quad_periodic(const std::function<double(double)>& f, const PeriodicGrid& grid);

/// Same rule applied to values already sampled at the grid nodes.
double quad_periodic(std::span<const double> values, const PeriodicGrid& grid);

}  // namespace pdmp
