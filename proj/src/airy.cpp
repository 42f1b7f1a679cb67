#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "nuderiv/detail/airy_complex.hpp"
#include "nuderiv/detail/scaled.hpp"
#include "nuderiv/errors.hpp"
#include "nuderiv/specfun.hpp"

namespace nuderiv {

namespace detail {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kRoot3 = 1.7320508075688772935;
constexpr long double kAi0 = 0.355028053887817239260063186004183577L;
constexpr long double kAip0 = 0.258819403792806798405183560189203963L;  // -Ai'(0)

// Maclaurin series pieces f, g (and derivatives) with
// Ai = c1 f - c2 g, Bi = sqrt3 (c1 f + c2 g).
template <class T>
struct Maclaurin {
    T f, g, fp, gp;
};

template <class T>
Maclaurin<T> maclaurin(T z) {
    const T z2 = z * z;
    const T z3 = z2 * z;
    T tf = 1, tg = z;
    Maclaurin<T> m{1, z, 0, 1};
    for (int k = 1; k < 400; ++k) {
        const long double k3 = 3.0L * k;
        const T dfp = tf * z2 / (k3 - 1);
        const T dgp = tg * z2 / k3;
        tf *= z3 / ((k3 - 1) * k3);
        tg *= z3 / (k3 * (k3 + 1));
        m.f += tf;
        m.g += tg;
        m.fp += dfp;
        m.gp += dgp;
        using std::abs;
        const long double scale = abs(m.f) + abs(m.g) + abs(m.fp) + abs(m.gp);
        if (abs(tf) + abs(tg) + abs(dfp) + abs(dgp) < 1e-21L * scale) break;
    }
    return m;
}

double u_coeff_next(double u_prev, int k) {
    return u_prev * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
}

// Modified Bessel I_nu, K_nu for |nu| <= 1/2-ish fractional orders used
// by the Airy representation; Temme's method.
void bessel_ik(double xnu, double x, double& ri, double& rk) {
    constexpr double kEps = 1e-16, kTiny = 1e-300;
    const int nl = static_cast<int>(xnu + 0.5);
    const double xmu = xnu - nl, xmu2 = xmu * xmu;
    const double xi = 1.0 / x, xi2 = 2.0 * xi;
    double h = std::max(xnu * xi, kTiny);
    double b = xi2 * xnu, d = 0.0, c = h;
    for (int i = 1; i <= 1000000; ++i) {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    double ril = kTiny, ripl = h * ril;
    const double ril1 = ril;
    double fact = xnu * xi;
    for (int l = nl; l >= 1; --l) {
        double ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    const double f = ripl / ril;
    double rkmu, rk1;
    if (x < 2.0) {
        const double x2 = 0.5 * x, pimu = kPi * xmu;
        const double fct = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
        double dd = -std::log(x2);
        double e = xmu * dd;
        const double fct2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
        // 1/Gamma(1 +- mu) for the two fractional orders in use.
        const double gampl = 1.0 / std::tgamma(1.0 + xmu), gammi = 1.0 / std::tgamma(1.0 - xmu);
        const double gam2 = 0.5 * (gammi + gampl);
        const double gam1 = std::abs(xmu) < 1e-8 ? -0.5772156649015329 : (gammi - gampl) / (2.0 * xmu);
        double ff = fct * (gam1 * std::cosh(e) + gam2 * fct2 * dd);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / gampl, q = 0.5 / (e * gammi);
        double cc = 1.0;
        dd = x2 * x2;
        double sum1 = p;
        for (int i = 1; i <= 100000; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
            cc *= dd / i;
            p /= (i - xmu);
            q /= (i + xmu);
            double del = cc * ff;
            sum += del;
            sum1 += cc * (p - i * ff);
            if (std::abs(del) < std::abs(sum) * kEps) break;
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
    } else {
        double bb = 2.0 * (1.0 + x);
        double dd = 1.0 / bb;
        double hh = dd, delh = dd;
        double q1 = 0.0, q2 = 1.0;
        const double a1 = 0.25 - xmu2;
        double q = a1, cc = a1, a = -a1;
        double s = 1.0 + q * delh;
        for (int i = 2; i <= 100000; ++i) {
            a -= 2 * (i - 1);
            cc = -a * cc / i;
            const double qnew = (q1 - bb * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += cc * qnew;
            bb += 2.0;
            dd = 1.0 / (bb + a * dd);
            delh = (bb * dd - 1.0) * delh;
            hh += delh;
            const double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < kEps) break;
        }
        hh = a1 * hh;
        rkmu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
        rk1 = rkmu * (xmu + x + 0.5 - hh) * xi;
    }
    const double rkmup = xmu * xi * rkmu - rk1;
    const double rimu = xi / (f * rkmu - rkmup);
    ri = rimu * ril1 / ril;
    for (int i = 1; i <= nl; ++i) {
        double rktemp = (xmu + i) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    rk = rkmu;
}

AiryReal airy_asymptotic(double x) {
    const double ax = std::abs(x);
    const double root = std::sqrt(ax);
    const double q = std::sqrt(root);  // |x|^{1/4}
    const double xi = 2.0 / 3.0 * ax * root;
    // sums over u_k xi^-k and v_k xi^-k, split by parity for x < 0
    double u = 1.0, su_even = 1.0, su_odd = 0.0, sv_even = 1.0, sv_odd = 0.0;
    double salt_u = 1.0, salt_v = 1.0, splain_u = 1.0, splain_v = 1.0;
    double pw = 1.0, last = HUGE_VAL;
    for (int k = 1; k < 200; ++k) {
        u = u_coeff_next(u, k);
        const double v = -(6.0 * k + 1) / (6.0 * k - 1) * u;
        pw /= xi;
        const double tu = u * pw, tv = v * pw;
        const double mag = std::abs(tu) + std::abs(tv);
        if (mag > last) break;  // asymptotic: stop at the smallest term
        last = mag;
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        salt_u += sgn * tu;
        salt_v += sgn * tv;
        splain_u += tu;
        splain_v += tv;
        // for negative x: (-1)^j u_{2j} xi^{-2j} and (-1)^j u_{2j+1} xi^{-2j-1}
        const double sg = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            su_even += sg * tu;
            sv_even += sg * tv;
        } else {
            su_odd += sg * tu;
            sv_odd += sg * tv;
        }
        if (mag < 1e-17) break;
    }
    AiryReal r{};
    if (x > 0) {
        const double em = std::exp(-xi), ep = std::exp(xi);
        r.ai = em / (2.0 * kSqrtPi * q) * salt_u;
        r.aip = -q * em / (2.0 * kSqrtPi) * salt_v;
        r.bi = ep / (kSqrtPi * q) * splain_u;
        r.bip = q * ep / kSqrtPi * splain_v;
    } else {
        const double ph = xi - kPi / 4;
        const double c = std::cos(ph), s = std::sin(ph);
        r.ai = (c * su_even + s * su_odd) / (kSqrtPi * q);
        r.bi = (-s * su_even + c * su_odd) / (kSqrtPi * q);
        r.aip = q / kSqrtPi * (s * sv_even - c * sv_odd);
        r.bip = q / kSqrtPi * (c * sv_even + s * sv_odd);
    }
    return r;
}

}  // namespace

AiryReal airy_real(double x) {
    if (std::isnan(x)) return {NAN, NAN, NAN, NAN};
    if (x >= -5.0 && x <= 2.0) {
        const Maclaurin<long double> m = maclaurin<long double>(x);
        AiryReal r;
        r.ai = static_cast<double>(kAi0 * m.f - kAip0 * m.g);
        r.aip = static_cast<double>(kAi0 * m.fp - kAip0 * m.gp);
        r.bi = static_cast<double>(kRoot3 * (kAi0 * m.f + kAip0 * m.g));
        r.bip = static_cast<double>(kRoot3 * (kAi0 * m.fp + kAip0 * m.gp));
        return r;
    }
    if (std::abs(x) >= 20.0) return airy_asymptotic(x);
    const double ax = std::abs(x);
    const double root = std::sqrt(ax);
    const double z = 2.0 / 3.0 * ax * root;
    AiryReal r;
    if (x > 0.0) {
        double ri, rk;
        bessel_ik(1.0 / 3.0, z, ri, rk);
        r.ai = root * rk / (kPi * kRoot3);
        r.bi = root * (rk / kPi + 2.0 * ri / kRoot3);
        bessel_ik(2.0 / 3.0, z, ri, rk);
        r.aip = -x * rk / (kPi * kRoot3);
        r.bip = x * (rk / kPi + 2.0 * ri / kRoot3);
    } else {
        ScaledJY a = bessel_jy_scaled(1.0 / 3.0, z);
        const double j1 = a.j.value(), y1 = a.y.value();
        r.ai = 0.5 * root * (j1 - y1 / kRoot3);
        r.bi = -0.5 * root * (y1 + j1 / kRoot3);
        a = bessel_jy_scaled(2.0 / 3.0, z);
        const double j2 = a.j.value(), y2 = a.y.value();
        r.aip = 0.5 * ax * (y2 / kRoot3 + j2);
        r.bip = 0.5 * ax * (j2 / kRoot3 - y2);
    }
    return r;
}

void airy_ai_complex(std::complex<double> z, std::complex<double>& ai, std::complex<double>& aip) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw PathFailure("airy: non-finite complex argument");
    if (std::abs(z) <= 8.0) {
        using CL = std::complex<long double>;
        const Maclaurin<CL> m = maclaurin<CL>(CL(z.real(), z.imag()));
        const CL a = kAi0 * m.f - kAip0 * m.g;
        const CL ap = kAi0 * m.fp - kAip0 * m.gp;
        ai = {static_cast<double>(a.real()), static_cast<double>(a.imag())};
        aip = {static_cast<double>(ap.real()), static_cast<double>(ap.imag())};
        return;
    }
    if (std::abs(std::arg(z)) > 2.0 * kPi / 3.0 + 1e-12)
        throw PathFailure("airy: complex argument outside the sector covered by the asymptotic expansion");
    const std::complex<double> root = std::sqrt(z);
    const std::complex<double> q = std::sqrt(root);
    const std::complex<double> xi = 2.0 / 3.0 * z * root;
    std::complex<double> su = 1.0, sv = 1.0, pw = 1.0;
    double u = 1.0, last = HUGE_VAL;
    for (int k = 1; k < 200; ++k) {
        u = u_coeff_next(u, k);
        const double v = -(6.0 * k + 1) / (6.0 * k - 1) * u;
        pw /= -xi;
        const std::complex<double> tu = u * pw, tv = v * pw;
        const double mag = std::abs(tu) + std::abs(tv);
        if (mag > last) break;
        last = mag;
        su += tu;
        sv += tv;
        if (mag < 1e-17) break;
    }
    const std::complex<double> e = std::exp(-xi) / (2.0 * kSqrtPi);
    ai = e / q * su;
    aip = -q * e * sv;
}

}  // namespace detail

double ray_angle(AiryRay ray) {
    switch (ray) {
        case AiryRay::pos_real: return 0.0;
        case AiryRay::neg_real: return std::numbers::pi;
        case AiryRay::plus_third: return std::numbers::pi / 3;
        case AiryRay::minus_third: return -std::numbers::pi / 3;
        case AiryRay::plus_two_thirds: return 2 * std::numbers::pi / 3;
        case AiryRay::minus_two_thirds: return -2 * std::numbers::pi / 3;
    }
    return 0.0;
}

AiryEval airy(double x) {
    if (!std::isfinite(x) || std::abs(x) > 1e4) throw DomainError("airy: real argument must satisfy |x| <= 1e4");
    const detail::AiryReal r = detail::airy_real(x);
    AiryEval e;
    e.z = x;
    e.ai = r.ai;
    e.aip = r.aip;
    e.bi = r.bi;
    e.bip = r.bip;
    return e;
}

// The four oblique rays reduce exactly to real Ai, Bi:
//   Ai(r e^{-+2pi i/3}) = (1/2) e^{-+pi i/3} (Ai(r) +- i Bi(r))
//   Ai'(r e^{-+2pi i/3}) = (1/2) e^{+-pi i/3} (Ai'(r) +- i Bi'(r))
// and r e^{+-pi i/3} = (-r) e^{-+2pi i/3}.
AiryEval airy(double r, AiryRay ray) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("airy: ray modulus must be finite and >= 0");
    if (ray == AiryRay::pos_real) return airy(r);
    if (ray == AiryRay::neg_real) return airy(-r);
    if (r > 1e4) throw DomainError("airy: |z| must not exceed 1e4");
    const double base = (ray == AiryRay::plus_third || ray == AiryRay::minus_third) ? -r : r;
    // s = +1 for the e^{-2pi i/3} family, -1 for e^{+2pi i/3}.
    const double s = (ray == AiryRay::minus_two_thirds || ray == AiryRay::plus_third) ? 1.0 : -1.0;
    const detail::AiryReal a = detail::airy_real(base);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> rot = std::polar(0.5, -s * std::numbers::pi / 3);
    const std::complex<double> rotp = std::polar(0.5, s * std::numbers::pi / 3);
    AiryEval e;
    e.z = std::polar(r, ray_angle(ray));
    e.ai = rot * (a.ai + s * i * a.bi);
    e.aip = rotp * (a.aip + s * i * a.bip);
    return e;
}

AiryEval airy(std::complex<double> z) {
    const double r = std::abs(z);
    if (r == 0.0) return airy(0.0);
    const double ang = std::arg(z);
    constexpr AiryRay rays[] = {AiryRay::pos_real, AiryRay::plus_third, AiryRay::minus_third,
                                AiryRay::plus_two_thirds, AiryRay::minus_two_thirds};
    for (AiryRay ray : rays)
        if (std::abs(ang - ray_angle(ray)) <= 1e-12) return airy(r, ray);
    if (std::abs(std::abs(ang) - std::numbers::pi) <= 1e-12) return airy(r, AiryRay::neg_real);
    throw DomainError("airy: complex argument is not on an admitted ray (arg z in {0, pi, +-pi/3, +-2pi/3})");
}

}  // namespace nuderiv
