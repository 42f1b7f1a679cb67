#include "nuderiv/airy_quad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nuderiv/detail/airy_complex.hpp"
#include "nuderiv/errors.hpp"
#include "nuderiv/lg_map.hpp"
#include "nuderiv/specfun.hpp"

namespace nuderiv {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Pair {
    cplx y, yp;
};

// y_i at lambda*zeta and its derivative with respect to its own argument.
void airy_pair(int i, int j, double nu, double zeta, AiryScale scale, Pair& pi, Pair& pj, cplx& lambda) {
    const double lam = std::pow(nu, 2.0 / 3.0);
    if (scale == AiryScale::real) {
        lambda = lam;
        const detail::AiryReal a = detail::airy_real(lam * zeta);
        pi = i == 1 ? Pair{a.ai, a.aip} : Pair{a.bi, a.bip};
        pj = j == 1 ? Pair{a.ai, a.aip} : Pair{a.bi, a.bip};
        return;
    }
    lambda = std::polar(lam, 2.0 * kPi / 3.0);
    // e^{2 pi i/3} lam zeta sits on the 2pi/3 ray for zeta >= 0 and on the
    // -pi/3 ray for zeta < 0.
    const AiryEval e = zeta >= 0.0 ? airy(lam * zeta, AiryRay::plus_two_thirds) : airy(-lam * zeta, AiryRay::minus_third);
    pi = pj = Pair{e.ai, e.aip};
}

cplx g_value(int i, int j, int k, double nu, double zeta, AiryScale scale) {
    Pair a, b;
    cplx lam;
    airy_pair(i, j, nu, zeta, scale, a, b, lam);
    const cplx yy = a.y * b.y;
    const cplx dd = a.yp * b.yp;
    const cplx mixed = a.y * b.yp + a.yp * b.y;
    const double z = zeta;
    switch (k) {
        case 0:
            return z * yy - dd / lam;
        case 1:
            return z * z * yy / 3.0 - z * dd / (3.0 * lam) + mixed / (6.0 * lam * lam);
        default:
            return -z * z * dd / (5.0 * lam) + z * mixed / (5.0 * lam * lam) + (z * z * z - 1.0 / (lam * lam * lam)) * yy / 5.0;
    }
}

double g_real(int i, int j, int k, double nu, double zeta) { return g_value(i, j, k, nu, zeta, AiryScale::real).real(); }

const cplx kRotPrefactor = std::polar(4.0, -2.0 * kPi / 3.0);

}  // namespace

GValue g_k(int i, int j, int k, double nu, double zeta, AiryScale scale) {
    if (i < 1 || i > 2 || j < 1 || j > 2) throw DomainError("g_k: indices must be 1 (Ai) or 2 (Bi)");
    if (k < 0 || k > 2) throw DomainError("g_k: degree must be 0, 1 or 2");
    if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("g_k: nu must be positive");
    if (!std::isfinite(zeta)) throw DomainError("g_k: zeta must be finite");
    if (scale == AiryScale::rotated && (i != 1 || j != 1))
        throw DomainError("g_k: the rotated scale is only available for Ai^2");
    GValue g;
    g.i = i;
    g.j = j;
    g.k = k;
    g.nu = nu;
    g.scale = scale;
    g.zeta = zeta;
    g.value = g_value(i, j, k, nu, zeta, scale);
    return g;
}

LValue l_closed(double nu, double x) {
    if (!(nu >= 8.0)) throw OrderTooSmall("l_closed: nu must be >= 8");
    if (!(x >= 1.0) || !std::isfinite(x)) throw DomainError("l_closed: x must be >= 1");
    const ZetaPoint p = zeta_of_x(x);
    LValue out;
    out.nu = nu;
    out.x = x;
    out.route = LRoute::closed_form;
    out.value = kRotPrefactor * std::pow(nu, -2.0 / 3.0) * p.ratio * g_value(1, 1, 0, nu, p.zeta, AiryScale::rotated);
    return out;
}

LValue l_contour(double nu, double x, double theta, double tol) {
    if (!(nu >= 8.0)) throw OrderTooSmall("l_contour: nu must be >= 8");
    if (!(x >= 1.0) || !std::isfinite(x)) throw DomainError("l_contour: x must be >= 1");
    if (!(theta > 0.0 && theta <= kPi / 2 + 1e-15)) throw DomainError("l_contour: path angle must lie in (0, pi/2]");
    const cplx dir = std::polar(1.0, theta);
    const cplx lam = std::polar(std::pow(nu, 2.0 / 3.0), 2.0 * kPi / 3.0);
    auto integrand = [&](double s) {
        const cplx t = x + s * dir;
        cplx zeta, ratio;
        detail::zeta_complex(t, zeta, ratio);
        cplx ai, aip;
        detail::airy_ai_complex(lam * zeta, ai, aip);
        return std::sqrt(ratio) * ai * ai / t * dir;
    };
    // The integrand decays like exp(-2 nu s) far from the turning point
    // and more slowly near it; segments grow geometrically from 1/nu.
    cplx acc = 0.0;
    double lo = 0.0, len = 1.0 / nu;
    for (int seg = 0;; ++seg) {
        if (seg > 80) throw ToleranceNotMet("l_contour: integrand did not decay along the path", std::abs(acc), NAN);
        const double hi = lo + len;
        const auto r = adaptive_simpson(integrand, lo, hi, tol, 1e-3 * tol * std::abs(acc));
        acc += r.value;
        const double tail = std::abs(integrand(hi)) * len;
        if (seg >= 3 && tail < 1e-16 * std::abs(acc)) break;
        lo = hi;
        len *= 2.0;
    }
    LValue out;
    out.nu = nu;
    out.x = x;
    out.route = LRoute::contour;
    out.value = kRotPrefactor * std::pow(nu, -2.0 / 3.0) * acc;
    return out;
}

FResult f_integral(int l, double nu, double x, double tol) {
    if (l < 1 || l > 4) throw DomainError("f_integral: l must be 1..4");
    if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("f_integral: nu must be positive");
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("f_integral: x must be positive");
    if (l <= 3 && x > 1.0) throw DomainError("f_integral: l = 1, 2, 3 need 0 < x <= 1");
    if (l == 4 && x < 1.0) throw DomainError("f_integral: l = 4 needs x >= 1");
    const double lam = std::pow(nu, 2.0 / 3.0);
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        const ZetaPoint p = zeta_of_x(t);
        const double w = std::sqrt(p.ratio) / t;
        const detail::AiryReal a = detail::airy_real(lam * p.zeta);
        switch (l) {
            case 1: return w * a.ai * a.bi;
            case 2: return w * a.ai * a.ai;
            case 3: return w * a.bi * a.bi;
            default: return w * (a.ai * a.ai + a.bi * a.bi);
        }
    };
    QuadResult<double> r;
    switch (l) {
        case 2: r = adaptive_simpson(integrand, 0.0, x, tol); break;
        case 4: r = adaptive_simpson_inf(integrand, x, tol); break;
        default: r = adaptive_simpson(integrand, x, 1.0, tol); break;
    }
    FResult out{r.value, r.abs_error, false};
    if (std::abs(out.value) < 1e-300) {
        out.value = 0.0;
        out.underflow = true;
    }
    return out;
}

double g_closed(int l, double nu, double x) {
    if (l < 1 || l > 4) throw DomainError("g_closed: l must be 1..4");
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("g_closed: x must be positive");
    if (l <= 3 && x > 1.0) throw DomainError("g_closed: l = 1, 2, 3 need 0 < x <= 1");
    if (l == 4 && x < 1.0) throw DomainError("g_closed: l = 4 needs x >= 1");
    const SplitPoints sp = split_points(nu);  // throws for nu < 8
    const ZetaPoint p = zeta_of_x(x);
    const auto a = a_coeffs();
    const double nu13 = std::cbrt(nu);
    switch (l) {
        case 1: {
            const double zm = std::min(p.zeta, sp.zeta0);
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[k] * (g_real(1, 2, k, nu, zm) - g_real(1, 2, k, nu, 0.0));
            return s + std::max(std::acosh(1.0 / x) - std::acosh(1.0 / sp.x0), 0.0) / (2.0 * kPi * nu13);
        }
        case 2:
            return -p.ratio * g_real(1, 1, 0, nu, p.zeta);
        case 3:
            return p.ratio * g_real(2, 2, 0, nu, p.zeta) - a[0] * g_real(2, 2, 0, nu, 0.0);
        default: {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += a[k] * (g_real(1, 1, k, nu, p.zeta) + g_real(2, 2, k, nu, p.zeta) - g_real(1, 1, k, nu, sp.zeta1) -
                             g_real(2, 2, k, nu, sp.zeta1));
            return std::asin(1.0 / std::max(x, sp.x1)) / (kPi * nu13) + std::max(s, 0.0);
        }
    }
}

}  // namespace nuderiv
