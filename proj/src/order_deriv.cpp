#include "nuderiv/order_deriv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nuderiv/airy_quad.hpp"
#include "nuderiv/errors.hpp"
#include "nuderiv/lg_map.hpp"
#include "nuderiv/specfun.hpp"

namespace nuderiv {

namespace {

constexpr double kPi = std::numbers::pi;
// Relative accuracy assumed for a single J or Y evaluation.
constexpr double kBesselEps = 1e-13;

void check_point(double nu, double z) {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("order must be a positive finite real");
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("argument must be a positive finite real");
}

Method resolve(Method m, double nu, double z, const DerivOptions& opts) {
    if (m != Method::automatic) return m;
    if (nu >= opts.uniform_threshold) return Method::uniform;
    if (z > kSeriesMaxArgument) {
        if (nu >= kUniformMinOrder) return Method::uniform;
        throw DomainError("argument above 2000 with order below 8: the series route is too costly and the uniform route does not apply");
    }
    return Method::series;
}

double safe_rel(double err, double value) {
    const double a = std::abs(value);
    return a > 0.0 ? err / a : (err == 0.0 ? 0.0 : HUGE_VAL);
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::automatic: return "auto";
        case Method::series: return "series";
        case Method::uniform: return "uniform";
        case Method::oracle: return "oracle";
    }
    return "?";
}

std::optional<Method> parse_method(const std::string& s) {
    if (s == "auto") return Method::automatic;
    if (s == "series") return Method::series;
    if (s == "uniform") return Method::uniform;
    if (s == "oracle") return Method::oracle;
    return std::nullopt;
}

OrderArg OrderArg::make(double nu, double z, const DerivOptions& opts) {
    check_point(nu, z);
    Regime r;
    if (nu < kUniformMinOrder)
        r = Regime::series_preferred;
    else if (nu >= opts.uniform_threshold || z > kSeriesMaxArgument)
        r = Regime::uniform_preferred;
    else
        r = Regime::both;
    return {nu, z, z / nu, r};
}

IIntegrals i_integrals_series(double nu, double z, double tol) {
    check_point(nu, z);
    if (z > kSeriesMaxArgument)
        throw DomainError("series route refused for argument above 2000 (cost grows linearly); use the uniform route");
    IIntegrals out;
    out.i1 = i1_series(nu, z, tol).value;
    out.i2 = i2_series(nu, z, tol).value;
    out.i3 = i3_series(nu, z, tol).value;
    return out;
}

IIntegrals i_integrals_uniform(double nu, double x, UniformVariant variant) {
    if (!(nu >= kUniformMinOrder)) throw OrderTooSmall("uniform route needs nu >= 8");
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("scaled argument must be a positive finite real");
    const bool quad = variant == UniformVariant::quadrature;
    auto F = [&](int l, double at) { return quad ? f_integral(l, nu, at).value : g_closed(l, nu, at); };
    const std::complex<double> L = quad ? l_contour(nu, std::max(x, 1.0)).value : l_closed(nu, std::max(x, 1.0)).value;
    const double c = std::pow(nu, -2.0 / 3.0);
    IIntegrals out;
    if (x <= 1.0) {
        out.i1 = L.imag() - 2.0 * c * F(1, x);
        out.i2 = 2.0 * c * F(2, x);
        out.i3 = 2.0 * c * F(3, x) - L.real() + c * F(4, 1.0);
    } else {
        const double f4 = F(4, x);
        out.i1 = L.imag();
        out.i2 = 1.0 / (2.0 * nu) - L.real() - c * f4;
        out.i3 = -L.real() + c * f4;
    }
    return out;
}

double assemble_jhat(double nu, const Components& c) { return nu * kPi * (c.y * c.ints.i2 + c.j * c.ints.i1); }

double assemble_yhat(double nu, const Components& c) {
    return nu * kPi * (c.j * c.ints.i3 - c.y * c.ints.i1) - 0.5 * kPi * c.j;
}

double oracle_step(double nu) { return std::max(1e-5, 1e-7 * nu); }

DerivPair oracle_fd(double nu, double z) {
    check_point(nu, z);
    const double h = oracle_step(nu);
    if (!(nu > h)) throw StepUnderflow("oracle_fd: order must exceed the difference step max(1e-5, 1e-7 nu)");
    auto diff = [&](double step, double& dj, double& dy) {
        const BesselEval up = bessel_jy(nu + step, z), dn = bessel_jy(nu - step, z);
        dj = (up.j - dn.j) / (2.0 * step);
        dy = (up.y - dn.y) / (2.0 * step);
    };
    double dj1, dy1, dj2, dy2;
    diff(h, dj1, dy1);
    diff(0.5 * h, dj2, dy2);
    const BesselEval mid = bessel_jy(nu, z);
    // Richardson discrepancy plus the cancellation floor of the differences
    auto finish = [&](double d1, double d2, double f) {
        DerivResult r;
        r.value = (4.0 * d2 - d1) / 3.0;
        r.method = Method::oracle;
        const double floor = kBesselEps * std::abs(f) / h;
        r.est_rel_err = safe_rel(std::abs(r.value - d2) + floor, r.value);
        return r;
    };
    return {finish(dj1, dj2, mid.j), finish(dy1, dy2, mid.y)};
}

DerivPair order_derivs(double nu, double z, Method method, const DerivOptions& opts) {
    check_point(nu, z);
    const Method m = resolve(method, nu, z, opts);
    if (m == Method::oracle) return oracle_fd(nu, z);

    Components c;
    double rel = 0.0;
    if (m == Method::series) {
        c.ints = i_integrals_series(nu, z, opts.tol);
        const BesselEval b = bessel_jy(nu, z);
        c.j = b.j;
        c.y = b.y;
        rel = std::max(opts.tol, kBesselEps);
    } else {
        const double x = z / nu;
        c.ints = i_integrals_uniform(nu, x, opts.variant);
        c.j = uniform_j(nu, x).value;
        c.y = uniform_y(nu, x).value;
        rel = 1.0 / nu;  // leading-order route
    }
    DerivPair out;
    out.jhat.value = assemble_jhat(nu, c);
    out.yhat.value = assemble_yhat(nu, c);
    out.jhat.method = out.yhat.method = m;
    // Relative error of the pieces, amplified by any cancellation in the sums.
    const double sj = nu * kPi * (std::abs(c.y * c.ints.i2) + std::abs(c.j * c.ints.i1));
    const double sy = nu * kPi * (std::abs(c.j * c.ints.i3) + std::abs(c.y * c.ints.i1)) + 0.5 * kPi * std::abs(c.j);
    out.jhat.est_rel_err = safe_rel(rel * sj, out.jhat.value);
    out.yhat.est_rel_err = safe_rel(rel * sy, out.yhat.value);
    out.jhat.components = out.yhat.components = c;
    return out;
}

DerivResult jhat(double nu, double z, Method method, const DerivOptions& opts) {
    return order_derivs(nu, z, method, opts).jhat;
}

DerivResult yhat(double nu, double z, Method method, const DerivOptions& opts) {
    return order_derivs(nu, z, method, opts).yhat;
}

std::complex<double> hankel_hat(double nu, double z, int kind, Method method, const DerivOptions& opts) {
    if (kind != 1 && kind != 2) throw DomainError("hankel_hat: kind must be 1 or 2");
    const DerivPair p = order_derivs(nu, z, method, opts);
    return {p.jhat.value, kind == 1 ? p.yhat.value : -p.yhat.value};
}

}  // namespace nuderiv
