#pragma once

#include <numbers>
#include <vector>

namespace pdmp {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces x modulo 2*pi into [0, 2*pi). Throws DomainError on non-finite x.
double wrap(double x);

/// Point of the circle R / 2piZ, always stored in [0, 2*pi).
class Angle {
public:
    constexpr Angle() = default;
    explicit Angle(double x) : value_(wrap(x)) {}

    constexpr double value() const noexcept { return value_; }

    Angle operator+(double dx) const { return Angle(value_ + dx); }
    Angle operator-(double dx) const { return Angle(value_ - dx); }
    Angle& operator+=(double dx) { value_ = wrap(value_ + dx); return *this; }

    friend bool operator==(const Angle&, const Angle&) = default;

private:
    double value_ = 0.0;
};

/// Chordal distance |e^{ix} - e^{iz}| = 2|sin((x - z)/2)|.
double dist_T(Angle x, Angle z);

/// Point of the d-torus.
class TorusVec {
public:
    TorusVec() = default;
    explicit TorusVec(const std::vector<double>& coords);

    std::size_t dim() const noexcept { return coords_.size(); }
    const std::vector<Angle>& coords() const noexcept { return coords_; }
    Angle operator[](std::size_t i) const { return coords_[i]; }

    /// Straight-line flight x + s*y, componentwise wrapped.
    TorusVec advanced(const std::vector<double>& velocity, double s) const;

private:
    std::vector<Angle> coords_;
};

}  // namespace pdmp
