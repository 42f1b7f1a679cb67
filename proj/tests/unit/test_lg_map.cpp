#include <boost/math/special_functions/airy.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "nuderiv/errors.hpp"
#include "nuderiv/lg_map.hpp"
#include "nuderiv/specfun.hpp"
#include "../oracles/reference_values.hpp"
#include "support.hpp"

using namespace nuderiv;
using testing_support::rel;

constexpr double pi = std::numbers::pi;

TEST_CASE("zeta at the turning point and reference points") {
    const ZetaPoint one = zeta_of_x(1.0);
    CHECK(one.zeta == 0.0);
    CHECK(rel(one.phi, std::cbrt(2.0)) < 1e-15);
    CHECK(rel(zeta_of_x(0.5).zeta, ref::kZeta_0p5) < 1e-12);
    CHECK(rel(zeta_of_x(2.0).zeta, ref::kZeta_2) < 1e-12);
    const double want = -std::pow(1.5 * (std::sqrt(3.0) - pi / 3.0), 2.0 / 3.0);
    CHECK(rel(zeta_of_x(2.0).zeta, want) < 1e-13);
    CHECK_THROWS_AS(zeta_of_x(0.0), DomainError);
    CHECK_THROWS_AS(zeta_of_x(-1.0), DomainError);
}

TEST_CASE("defining relations hold on a grid") {
    for (int i = 1; i <= 400; ++i) {
        const double x = std::exp(std::log(1e-3) + (std::log(50.0) - std::log(1e-3)) * i / 400.0);
        CAPTURE(x);
        const ZetaPoint p = zeta_of_x(x);
        if (x < 1.0) {
            const double s = std::sqrt(1.0 - x * x);
            CHECK(rel(2.0 / 3.0 * std::pow(p.zeta, 1.5), std::log((1.0 + s) / x) - s) < 1e-12);
        } else if (x > 1.0) {
            const double t = std::sqrt(x * x - 1.0);
            CHECK(rel(2.0 / 3.0 * std::pow(-p.zeta, 1.5), t - std::acos(1.0 / x)) < 1e-12);
        }
        CHECK(p.ratio > 0.0);
        CHECK(rel(p.phi, std::pow(4.0 * p.ratio, 0.25)) < 1e-15);
    }
}

TEST_CASE("zeta is decreasing") {
    double prev = HUGE_VAL;
    for (int i = 0; i <= 1000; ++i) {
        const double x = 1e-3 + (50.0 - 1e-3) * i / 1000.0;
        const double z = zeta_of_x(x).zeta;
        CHECK(z < prev);
        prev = z;
    }
}

TEST_CASE("inverse map") {
    CHECK(x_of_zeta(0.0) == 1.0);
    // far on the oscillatory side x ~ (2/3)(-zeta)^{3/2} + pi/2
    const double asym = 2.0 / 3.0 * std::pow(10.0, 1.5) + pi / 2.0;
    CHECK(std::abs(x_of_zeta(-10.0) - asym) < std::pow(10.0, -1.5));
    // far on the monotone side x ~ 2 exp(-(2/3) zeta^{3/2} - 1)
    const double small = 2.0 * std::exp(-2.0 / 3.0 * std::pow(9.0, 1.5) - 1.0);
    CHECK(rel(x_of_zeta(9.0), small) < 1e-12);
    for (int i = 0; i < 200; ++i) {
        const double x = std::exp(std::log(1e-3) + (std::log(50.0) - std::log(1e-3)) * i / 199.0);
        CAPTURE(x);
        CHECK(std::abs(x_of_zeta(zeta_of_x(x).zeta) - x) <= 1e-10 * x);
    }
}

TEST_CASE("both branches agree at the window edges") {
    for (double edge : {0.8, 1.2})
        for (double d : {-1e-3, 1e-3}) {
            const double x = edge + d;
            CAPTURE(x);
            const ZetaPoint a = detail::zeta_closed_form(x), b = detail::zeta_near_turning_point(x);
            CHECK(rel(a.zeta, b.zeta) < 1e-10);
            CHECK(rel(a.ratio, b.ratio) < 1e-10);
        }
}

TEST_CASE("cubic Maclaurin behaviour around the turning point") {
    // zeta(x) - 2^{1/3}(1 - x) is O((1 - x)^2); the remainder after the
    // quadratic term 3/10 * 2^{1/3} (1-x)^2 is cubic.
    const double c1 = std::cbrt(2.0), c2 = 0.3 * std::cbrt(2.0);
    std::vector<double> hs, rs;
    for (double h : {0.02, 0.04, 0.08, 0.16}) {
        const double r = zeta_of_x(1.0 - h).zeta - c1 * h - c2 * h * h;
        hs.push_back(h);
        rs.push_back(std::abs(r));
    }
    CHECK(std::abs(testing_support::log_slope(hs, rs) - 3.0) < 0.2);
}

TEST_CASE("expansion coefficients") {
    const auto a = a_coeffs();
    CHECK(a[0] == std::pow(2.0, -2.0 / 3.0));
    CHECK(a[1] == 0.4);
    CHECK(rel(a[2], 3.0 / 35.0 * std::pow(2.0, 2.0 / 3.0)) < 1e-15);
    CHECK(std::abs(a[2] - 0.1360629) < 1e-7);
    CHECK(rel(zeta_of_x(0.9).ratio, a[0] + a[1] * zeta_of_x(0.9).zeta) < 5e-3);
}

TEST_CASE("airy weight and modulus") {
    const AiryEnvelope& env = AiryEnvelope::standard();
    CHECK(rel(env.c(), ref::kAiryCrossing) < 1e-14);
    CHECK(env.weight(-5.0) == 1.0);
    CHECK(env.weight(env.c()) == doctest::Approx(1.0).epsilon(1e-15));
    for (double x : {-20.0, -3.0, -0.5, 0.0, 1.0, 4.0, 10.0}) {
        CAPTURE(x);
        const double ai = boost::math::airy_ai(x), bi = boost::math::airy_bi(x);
        const double e = env.weight(x), m = env.modulus(x);
        if (x >= env.c()) {
            CHECK(rel(m / e, std::sqrt(2.0) * ai) < 1e-12);
            CHECK(rel(m * e, std::sqrt(2.0) * bi) < 1e-12);
        } else {
            CHECK(rel(m, std::hypot(ai, bi)) < 1e-12);
        }
        CHECK(std::abs(ai) <= m / e * (1 + 1e-12));
        CHECK(std::abs(bi) <= m * e * (1 + 1e-12));
    }
    // the branches meet at c
    const double c = env.c();
    CHECK(rel(env.modulus(c - 1e-12), env.modulus(c + 1e-12)) < 1e-10);
}

TEST_CASE("split points") {
    const SplitPoints s = split_points(1000.0);
    CHECK(s.x0 == doctest::Approx(0.9).epsilon(0.02));
    CHECK(s.x1 == doctest::Approx(1.1).epsilon(0.02));
    for (double nu : {50.0, 100.0, 400.0}) {
        CAPTURE(nu);
        const SplitPoints p = split_points(nu);
        CHECK(rel(p.zeta0, std::cbrt(2.0 / nu)) < 0.25);
        CHECK(std::abs(p.zeta0 - std::cbrt(2.0 / nu)) <= std::pow(nu, -2.0 / 3.0));
        CHECK(std::abs(-p.zeta1 - std::cbrt(2.0 / nu)) <= std::pow(nu, -2.0 / 3.0));
        CHECK(p.x0 < 1.0);
        CHECK(p.x1 > 1.0);
        CHECK(rel(zeta_of_x(p.x0).zeta, p.zeta0) < 1e-10);
    }
    CHECK_THROWS_AS(split_points(7.9), OrderTooSmall);
}

TEST_CASE("leading-order uniform approximation") {
    struct Case {
        double nu, x;
    };
    for (const Case c : {Case{50, 0.5}, Case{100, 1.0}, Case{50, 3.0}, Case{25, 1.7}, Case{200, 0.9}}) {
        CAPTURE(c.nu);
        CAPTURE(c.x);
        const BesselEval b = bessel_jy(c.nu, c.nu * c.x);
        const UniformApprox j = uniform_j(c.nu, c.x), y = uniform_y(c.nu, c.x);
        CHECK(std::abs(j.value - b.j) <= 5.0 * j.envelope);
        CHECK(std::abs(y.value - b.y) <= 5.0 * y.envelope);
        const std::complex<double> h = uniform_hankel1(c.nu, c.x);
        CHECK(std::abs(h - std::complex<double>(j.value, y.value)) <= 1e-12 * std::abs(h));
    }
    CHECK_THROWS_AS(uniform_j(7.0, 1.0), OrderTooSmall);
    CHECK_THROWS_AS(uniform_y(7.0, 1.0), OrderTooSmall);
}

TEST_CASE("uniform error falls like 1/nu") {
    // maximum over x of |uniform - exact| divided by the Airy envelope without its 1/nu factor
    std::vector<double> nus, errs;
    for (double nu : {25.0, 50.0, 100.0, 200.0}) {
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            const double x = 0.2 + 4.8 * i / 24.0;
            const BesselEval b = bessel_jy(nu, nu * x);
            const UniformApprox j = uniform_j(nu, x);
            worst = std::max(worst, std::abs(j.value - b.j) / (nu * j.envelope));
        }
        nus.push_back(nu);
        errs.push_back(worst);
    }
    CHECK(std::abs(testing_support::log_slope(nus, errs) + 1.0) < 0.3);
}
