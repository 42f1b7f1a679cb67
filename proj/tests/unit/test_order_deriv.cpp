#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "nuderiv/cli.hpp"
#include "nuderiv/errors.hpp"
#include "nuderiv/order_deriv.hpp"
#include "nuderiv/specfun.hpp"
#include "../oracles/oracles.hpp"
#include "../oracles/reference_values.hpp"
#include "support.hpp"

using namespace nuderiv;
using oracle::Product;
using testing_support::rel;
using testing_support::Rng;

constexpr double pi = std::numbers::pi;

namespace {

double env(double nu, double z, const DerivPair& o, bool for_j) {
    return cli::deriv_envelope(nu, z, o.jhat.value, o.yhat.value, for_j);
}

}  // namespace

TEST_CASE("series integrals") {
    // what is missing from 1/(2 nu) at z = 50 nu is int_z^inf J^2/t ~ 1/(pi z)
    for (double nu : {2.0, 5.0}) {
        const double z = 50.0 * nu;
        CHECK(rel(1.0 / (2.0 * nu) - i_integrals_series(nu, z).i2, 1.0 / (pi * z)) < 0.05);
    }
    const IIntegrals s = i_integrals_series(1.0, 1.0);
    CHECK(rel(s.i1, oracle::product_integral(Product::jy, 1.0, 1.0)) < 1e-6);
    CHECK(rel(s.i2, oracle::j2_head(1.0, 1.0)) < 1e-6);
    CHECK(rel(s.i3, oracle::product_integral(Product::yy, 1.0, 1.0)) < 1e-6);
    CHECK_THROWS_AS(i_integrals_series(1.0, 2500.0), DomainError);
}

TEST_CASE("I1 decays like sin(2z - nu pi) / (2 pi z^2)") {
    for (double z : {50.0, 100.0, 200.0, 400.0}) {
        CAPTURE(z);
        const double r = z * z * i_integrals_series(2.0, z).i1 - std::sin(2 * z - 2 * pi) / (2 * pi);
        CHECK(std::abs(r) * z < 0.5);
    }
}

TEST_CASE("uniform integrals") {
    // I1 and I3 are continuous across x = 1; I2 jumps by a term of the route's own error size
    const IIntegrals a = i_integrals_uniform(50.0, 1.0 - 1e-9), b = i_integrals_uniform(50.0, 1.0 + 1e-9);
    CHECK(rel(a.i1, b.i1) < 1e-6);
    CHECK(rel(a.i3, b.i3) < 1e-6);
    CHECK(rel(a.i2, b.i2) < 1.0 / 50.0);
    const IIntegrals u = i_integrals_uniform(50.0, 2.0), s = i_integrals_series(50.0, 100.0);
    CHECK(rel(u.i1, s.i1) < 2e-2);
    CHECK(rel(u.i2, s.i2) < 2e-2);
    CHECK(rel(u.i3, s.i3) < 2e-2);
    CHECK_THROWS_AS(i_integrals_uniform(5.0, 1.0), OrderTooSmall);
}

TEST_CASE("values at nu = 100") {
    CHECK(rel(jhat(100, 50, Method::uniform).value, -1.47735e-21) < 5e-5);
    CHECK(rel(jhat(100, 50, Method::oracle).value, -1.47702e-21) < 5e-4);
    CHECK(rel(yhat(100, 50, Method::uniform).value, -4.31473e18) < 5e-5);
    CHECK(rel(yhat(100, 50, Method::oracle).value, -4.31569e18) < 5e-4);
    CHECK(rel(jhat(100, 500, Method::uniform).value, 0.0150731) < 5e-5);
    CHECK(rel(jhat(100, 500, Method::oracle).value, 0.0150695) < 5e-5);
    CHECK(rel(yhat(100, 500, Method::uniform).value, -0.0470087) < 5e-5);
    CHECK(rel(yhat(100, 500, Method::oracle).value, -0.0470099) < 5e-5);
    // the same point reached through the scaled argument
    const DerivPair p = order_derivs(100, 100 * 0.5, Method::uniform);
    CHECK(p.jhat.method == Method::uniform);
    CHECK(rel(p.jhat.value, -1.47735e-21) < 5e-5);
}

TEST_CASE("exact references") {
    struct Case {
        double nu, z, j, y;
    };
    const Case cases[] = {{100, 50, ref::kJhat_100_50, ref::kYhat_100_50},
                          {100, 500, ref::kJhat_100_500, ref::kYhat_100_500},
                          {0.5, 2, ref::kJhat_0p5_2, ref::kYhat_0p5_2},
                          {1.5, 3, ref::kJhat_1p5_3, ref::kYhat_1p5_3},
                          {2, 5, ref::kJhat_2_5, ref::kYhat_2_5}};
    for (const auto& c : cases) {
        CAPTURE(c.nu);
        CAPTURE(c.z);
        const DerivPair o = oracle_fd(c.nu, c.z);
        CHECK(rel(o.jhat.value, c.j) < 1e-6);
        CHECK(rel(o.yhat.value, c.y) < 1e-6);
        if (c.nu < 25) {
            const DerivPair s = order_derivs(c.nu, c.z, Method::series);
            CHECK(rel(s.jhat.value, c.j) < 1e-8);
            CHECK(rel(s.yhat.value, c.y) < 1e-8);
        }
    }
    const std::complex<double> h = hankel_hat(2, 5, 1);
    CHECK(std::abs(h - std::complex<double>(ref::kJhat_2_5, ref::kYhat_2_5)) < 1e-8);
    CHECK(hankel_hat(2, 5, 2) == std::conj(h));
    const std::complex<double> hu = hankel_hat(100, 500, 1, Method::uniform);
    CHECK(std::abs(hu - std::complex<double>(0.0150731, -0.0470087)) < 1e-6);
    CHECK_THROWS_AS(hankel_hat(2, 5, 3), DomainError);
}

TEST_CASE("finite-difference oracle") {
    CHECK_THROWS_AS(oracle_fd(1e-6, 1.0), StepUnderflow);
    CHECK(oracle_step(1.0) == 1e-5);
    CHECK(oracle_step(1000.0) == doctest::Approx(1e-4));
    // large-argument form dJ/dnu ~ (pi/2) sqrt(2/(pi z)) sin(z - nu pi/2 - pi/4) at its extrema
    const double nu = 3.0;
    for (int k = 60; k < 64; ++k) {
        const double z = (k + 0.5) * pi + nu * pi / 2 + pi / 4;
        const double lead = std::sqrt(pi / (2 * z)) * std::sin(z - nu * pi / 2 - pi / 4);
        CHECK(rel(oracle_fd(nu, z).jhat.value, lead) < 0.1);
    }
    const DerivPair o = oracle_fd(2.0, 5.0);
    CHECK(o.jhat.est_rel_err < 1e-6);
    CHECK(o.jhat.method == Method::oracle);
}

TEST_CASE("large-argument law through the series route") {
    for (double z : {100.0, 400.0, 1600.0}) {
        CAPTURE(z);
        const DerivResult r = jhat(1.0, z);
        CHECK(r.method == Method::series);
        CHECK(std::abs(r.value * std::sqrt(2 * z / pi) - std::sin(z - pi / 2 - pi / 4)) * z < 2.0);
    }
}

TEST_CASE("assembly from components") {
    for (Method m : {Method::series, Method::uniform}) {
        const DerivPair p = order_derivs(30.0, 45.0, m);
        REQUIRE(p.jhat.components.has_value());
        const Components& c = *p.jhat.components;
        CHECK(rel(p.jhat.value, 30.0 * pi * (c.y * c.ints.i2 + c.j * c.ints.i1)) < 1e-14);
        CHECK(rel(p.yhat.value, 30.0 * pi * (c.j * c.ints.i3 - c.y * c.ints.i1) - 0.5 * pi * c.j) < 1e-14);
    }
}

TEST_CASE("method selection") {
    CHECK(jhat(10, 5).method == Method::series);
    CHECK(jhat(30, 5).method == Method::uniform);
    CHECK(jhat(10, 2500).method == Method::uniform);
    DerivOptions o;
    o.uniform_threshold = 12;
    CHECK(jhat(15, 5, Method::automatic, o).method == Method::uniform);
    CHECK_THROWS_AS(jhat(5, 3000), DomainError);
    CHECK_THROWS_AS(jhat(5, 3, Method::uniform), OrderTooSmall);
    CHECK_THROWS_AS(jhat(0, 3), DomainError);
    CHECK_THROWS_AS(jhat(2, -3), DomainError);
    CHECK(OrderArg::make(5, 10).regime == Regime::series_preferred);
    CHECK(OrderArg::make(10, 10).regime == Regime::both);
    CHECK(OrderArg::make(30, 10).regime == Regime::uniform_preferred);
    CHECK(OrderArg::make(10, 3000).regime == Regime::uniform_preferred);
    CHECK(OrderArg::make(30, 15).x_scaled == 0.5);
    CHECK(parse_method("uniform") == Method::uniform);
    CHECK_FALSE(parse_method("fast").has_value());
    CHECK(to_string(Method::automatic) == "auto");
}

TEST_CASE("closed-form variant of the uniform route") {
    DerivOptions o;
    o.variant = UniformVariant::closed_form;
    const DerivPair c = order_derivs(100, 50, Method::uniform, o);
    const DerivPair q = order_derivs(100, 50, Method::uniform);
    CHECK(rel(c.jhat.value, q.jhat.value) < 1e-3);
    CHECK(rel(c.yhat.value, q.yhat.value) < 1e-3);
}

TEST_CASE("series route against the oracle on random points") {
    Rng u(41);
    for (int i = 0; i < 30; ++i) {
        const double nu = u(0.1, 25.0), z = u(0.5, 50.0);
        CAPTURE(nu);
        CAPTURE(z);
        const DerivPair s = order_derivs(nu, z, Method::series), o = oracle_fd(nu, z);
        CHECK(std::abs(s.jhat.value - o.jhat.value) <= 1e-5 * env(nu, z, o, true));
        CHECK(std::abs(s.yhat.value - o.yhat.value) <= 1e-5 * env(nu, z, o, false));
    }
}

TEST_CASE("uniform route error is O(1/nu)") {
    for (double nu : {25.0, 50.0, 100.0}) {
        CAPTURE(nu);
        for (double x : {0.2, 0.7, 1.0, 1.5, 3.0, 5.0}) {
            CAPTURE(x);
            const double z = nu * x;
            const DerivPair p = order_derivs(nu, z, Method::uniform), o = oracle_fd(nu, z);
            CHECK(std::abs(p.jhat.value - o.jhat.value) <= 10.0 / nu * env(nu, z, o, true));
            CHECK(std::abs(p.yhat.value - o.yhat.value) <= 10.0 / nu * env(nu, z, o, false));
        }
    }
}
