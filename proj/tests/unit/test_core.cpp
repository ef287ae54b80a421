#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "pdmp/core/errors.hpp"
#include "pdmp/core/grid_density.hpp"
#include "pdmp/core/quadrature.hpp"
#include "pdmp/core/random.hpp"
#include "pdmp/core/torus.hpp"

using namespace pdmp;
constexpr double pi = std::numbers::pi;

TEST_CASE("wrap examples") {
    CHECK(wrap(0.0) == 0.0);
    CHECK(wrap(kTwoPi) == 0.0);
    CHECK(wrap(-pi / 2) == doctest::Approx(3 * pi / 2).epsilon(1e-15));
    CHECK_THROWS_AS(wrap(std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(wrap(std::nan("")), DomainError);
}

TEST_CASE("wrap is idempotent and periodic") {
    RandomStream rng(SeedSpec{1, 0});
    for (int i = 0; i < 10000; ++i) {
        const double x = 200.0 * rng.uniform() - 100.0;
        const double w = wrap(x);
        REQUIRE(w >= 0.0);
        REQUIRE(w < kTwoPi);
        REQUIRE(wrap(w) == w);
        const int k = static_cast<int>(rng.next_u32() % 21) - 10;
        REQUIRE(dist_T(Angle(x + kTwoPi * k), Angle(x)) < 1e-12);
    }
    CHECK(wrap(-1e-300) < kTwoPi);
}

TEST_CASE("Angle arithmetic stays canonical") {
    Angle a(6.0);
    a += 1.0;
    CHECK(a.value() == doctest::Approx(7.0 - kTwoPi));
    CHECK((a - 2.0).value() >= 0.0);
    CHECK((Angle(0.1) - 0.2).value() == doctest::Approx(kTwoPi - 0.1));
    CHECK(Angle(kTwoPi) == Angle(0.0));
}

TEST_CASE("dist_T examples and metric properties") {
    CHECK(dist_T(Angle(0), Angle(0)) == 0.0);
    CHECK(dist_T(Angle(0), Angle(pi)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(dist_T(Angle(0), Angle(pi / 2)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    RandomStream rng(SeedSpec{2, 0});
    for (int i = 0; i < 10000; ++i) {
        const Angle x(kTwoPi * rng.uniform()), y(kTwoPi * rng.uniform()), z(kTwoPi * rng.uniform());
        REQUIRE(dist_T(x, z) <= dist_T(x, y) + dist_T(y, z) + 1e-14);
        REQUIRE(dist_T(x, y) == doctest::Approx(dist_T(y, x)).epsilon(1e-15));
        REQUIRE(dist_T(x, y) <= 2.0);
    }
}

TEST_CASE("TorusVec flight wraps every coordinate") {
    TorusVec v({0.5, 6.0, -1.0});
    const TorusVec w = v.advanced({1.0, 1.0, -3.0}, 2.0);
    CHECK(w.dim() == 3);
    CHECK(w[0].value() == doctest::Approx(2.5));
    CHECK(w[1].value() == doctest::Approx(8.0 - kTwoPi));
    CHECK(w[2].value() == doctest::Approx(wrap(-7.0)));
    for (const Angle& c : w.coords()) CHECK(c.value() < kTwoPi);
}

TEST_CASE("PeriodicGrid requires even n >= 4") {
    CHECK_THROWS_AS(PeriodicGrid(3), ConfigError);
    CHECK_THROWS_AS(PeriodicGrid(2), ConfigError);
    CHECK_THROWS_AS(PeriodicGrid(7), ConfigError);
    const PeriodicGrid g(16);
    CHECK(g.size() == 16);
    CHECK(g.node(4) == doctest::Approx(pi / 2));
    CHECK(g.spacing() == doctest::Approx(kTwoPi / 16));
}

TEST_CASE("quad_periodic examples") {
    const PeriodicGrid g16(16);
    CHECK(quad_periodic([](double) { return 1.0; }, g16) == doctest::Approx(kTwoPi).epsilon(1e-15));
    CHECK(std::abs(quad_periodic([](double z) { return std::cos(z); }, g16)) < 1e-14);
    const double i0 = oracle::bessel_i(0, 1.0);
    CHECK(i0 == doctest::Approx(1.2660658777520082).epsilon(1e-15));
    const double q = quad_periodic([](double z) { return std::exp(std::cos(z)); }, PeriodicGrid(64));
    CHECK(q == doctest::Approx(kTwoPi * i0).epsilon(1e-14));
    CHECK(q == doctest::Approx(7.95493).epsilon(1e-6));
}

TEST_CASE("quad_periodic is exact on trigonometric polynomials of degree < n/2") {
    RandomStream rng(SeedSpec{3, 0});
    for (std::size_t n : {4u, 8u, 16u, 64u}) {
        const PeriodicGrid g(n);
        const std::size_t deg = n / 2 - 1;
        std::vector<double> ca(deg + 1), sa(deg + 1);
        for (auto& c : ca) c = rng.normal();
        for (auto& s : sa) s = rng.normal();
        auto f = [&](double z) {
            double v = 0.0;
            for (std::size_t k = 0; k <= deg; ++k) v += ca[k] * std::cos(k * z) + sa[k] * std::sin(k * z);
            return v;
        };
        const double exact = kTwoPi * ca[0];
        CHECK(quad_periodic(f, g) == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("quad_periodic converges spectrally and exposes n") {
    const double exact = kTwoPi * oracle::bessel_i(0, 2.0);
    auto err = [&](std::size_t n) {
        const PeriodicGrid g(n);
        REQUIRE(g.size() == n);
        return std::abs(quad_periodic([](double z) { return std::exp(2 * std::cos(z)); }, g) - exact);
    };
    const double e4 = err(4), e8 = err(8), e16 = err(16);
    CHECK(e8 < 1e-2 * e4);
    CHECK(e16 < 1e-6 * e8);
    CHECK(err(32) < 1e-13 * exact);
}

TEST_CASE("quad_periodic reports the non-finite node") {
    const PeriodicGrid g(8);
    try {
        quad_periodic([&](double z) { return z == g.node(5) ? std::nan("") : 1.0; }, g);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.node() == 5);
    }
    std::vector<double> v(8, 1.0);
    v[2] = INFINITY;
    CHECK_THROWS_AS(quad_periodic(std::span<const double>(v), g), QuadratureError);
    CHECK_THROWS_AS(quad_periodic(std::span<const double>(v.data(), 6), g), std::exception);
}

TEST_CASE("philox4x32-10 known answers") {
    using A = std::array<std::uint32_t, 4>;
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          A{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          A{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("stream determinism and separation") {
    auto a = derive_stream(SeedSpec{99, 0});
    auto b = derive_stream(SeedSpec{99, 0});
    auto c = derive_stream(SeedSpec{99, 1});
    auto d = derive_stream(SeedSpec{100, 0});
    bool differ_stream = false, differ_seed = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform();
        REQUIRE(x == b.uniform());
        differ_stream = differ_stream || x != c.uniform();
        differ_seed = differ_seed || x != d.uniform();
    }
    CHECK(differ_stream);
    CHECK(differ_seed);
}

TEST_CASE("uniform and exponential draws") {
    RandomStream rng(SeedSpec{5, 7});
    double sum = 0.0, umin = 1.0, umax = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        umin = std::min(umin, u);
        umax = std::max(umax, u);
        sum += rng.exponential();
    }
    CHECK(umin >= 0.0);
    CHECK(umax < 1.0);
    CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));

    RandomStream g(SeedSpec{5, 8});
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < 200000; ++i) {
        const double z = g.normal();
        m1 += z;
        m2 += z * z;
    }
    CHECK(std::abs(m1 / 200000) < 0.01);
    CHECK(m2 / 200000 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("GridDensity normalization") {
    const PeriodicGrid g(kDensityNodes);
    std::vector<double> logw(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) logw[k] = 800.0 * std::cos(g.node(k));
    const GridDensity d = density_from_log_weights(g, logw);
    CHECK(d.integral() == doctest::Approx(1.0).epsilon(1e-12));
    for (double v : d.values) CHECK(std::isfinite(v));
    std::vector<double> flat(g.size(), 3.0);
    const GridDensity u = density_from_log_weights(g, flat);
    CHECK(u.values[0] == doctest::Approx(1.0 / kTwoPi).epsilon(1e-14));
    CHECK(u.logZ == doctest::Approx(3.0 + std::log(kTwoPi)).epsilon(1e-14));
}
