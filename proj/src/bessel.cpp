// Real-order Bessel J and Y.
//
// Scalar values: Temme's series (x < 2) or Steed's CF1/CF2 pair
// (x >= 2) for Y and for J at large argument; the ascending series for
// J where it cannot cancel badly.  For x >= 25 with the order below x,
// Hankel's expansion plus forward recurrence replaces Steed, whose CF1
// loses about x^2 eps there.  Both recurrences that move the order
// by whole steps are run on rescaled numbers so that large orders at
// small arguments do not overflow before the final normalisation.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nuderiv/compensated.hpp"
#include "nuderiv/detail/scaled.hpp"
#include "nuderiv/errors.hpp"
#include "nuderiv/specfun.hpp"

namespace nuderiv {

namespace detail {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 20000000;
constexpr double kBig = 0x1p500;

// Taylor coefficients of 1/Gamma(1+mu) about mu = 0.
constexpr double kRecipGamma[] = {
    1.0,
    5.77215664901532860607e-1,
    -6.55878071520253881077e-1,
    -4.2002635034095235529e-2,
    1.66538611382291489502e-1,
    -4.21977345555443367482e-2,
    -9.62197152787697356211e-3,
    7.2189432466630995424e-3,
    -1.16516759185906511211e-3,
    -2.15241674114950972816e-4,
    1.28050282388116186153e-4,
    -2.01348547807882386557e-5,
    -1.25049348214267065735e-6,
    1.13302723198169588237e-6,
    -2.05633841697760710345e-7,
    6.11609510448141581786e-9,
    5.00200764446922293006e-9,
    -1.18127457048702014459e-9,
    1.04342671169110051049e-10,
    7.78226343990507125405e-12,
    -3.69680561864220570819e-12,
    5.10037028745447597902e-13,
    -2.05832605356650678322e-14,
    -5.34812253942301798237e-15,
    1.22677862823826079016e-15,
    -1.18125930169745876951e-16,
    1.18669225475160033258e-18,
    1.41238065531803178156e-18,
    -2.29874568443537020659e-19,
    1.71440632192733743338e-20,
};
constexpr int kRecipGammaLen = sizeof(kRecipGamma) / sizeof(kRecipGamma[0]);

struct TemmeGammas {
    double gam1, gam2, gampl, gammi;
};

// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2,
// for |mu| <= 1/2, without the cancellation of the defining formulas.
TemmeGammas temme_gammas(double mu) {
    double mu2 = mu * mu;
    double even = 0.0, odd = 0.0;
    for (int k = kRecipGammaLen - 1; k >= 0; --k) {
        if (k % 2 == 0)
            even = even * mu2 + kRecipGamma[k];
        else
            odd = odd * mu2 + kRecipGamma[k];
    }
    TemmeGammas g;
    g.gam1 = -odd;
    g.gam2 = even;
    g.gampl = g.gam2 - mu * g.gam1;
    g.gammi = g.gam2 + mu * g.gam1;
    return g;
}

// Hankel's expansion for |mu| <= 3/2 and x >= kHankelMinArg: the terms
// shrink until k ~ 2x, so the smallest one is far below rounding.
constexpr double kHankelMinArg = 25.0;

void hankel_asymptotic(double mu, double x, double& j, double& y) {
    const double m4 = 4.0 * mu * mu;
    const double r = 1.0 / (8.0 * x);
    double p = 1.0, q = 0.0, term = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= (m4 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) * r / k;
        if (k % 2 == 1) q += (k % 4 == 1 ? term : -term);
        else p += (k % 4 == 2 ? -term : term);
        if (std::abs(term) < 1e-17) break;
    }
    // chi = x - (mu/2 + 1/4) pi, with cos/sin of x taken separately so the
    // large argument is never shifted before the trig call
    const double c = std::cos(x), s = std::sin(x);
    const double cp = cos_pi(0.5 * mu + 0.25), sp = sin_pi(0.5 * mu + 0.25);
    const double cchi = c * cp + s * sp, schi = s * cp - c * sp;
    const double amp = std::sqrt(2.0 / (kPi * x));
    j = amp * (p * cchi - q * schi);
    y = amp * (p * schi + q * cchi);
}

// Large argument, order not above it: Hankel's expansion at the two lowest
// orders and forward recurrence, which is stable for both J and Y while
// the order stays below the argument.
ScaledJY hankel_forward(double xnu, double x) {
    const int nl = static_cast<int>(std::floor(xnu + 0.5));
    const double mu = xnu - nl;
    double j0, y0, j1, y1;
    hankel_asymptotic(mu, x, j0, y0);
    hankel_asymptotic(mu + 1.0, x, j1, y1);
    if (nl == 0) return {Scaled::from(j0), Scaled::from(y0)};
    const double xi2 = 2.0 / x;
    for (int k = 1; k < nl; ++k) {
        const double f = (mu + k) * xi2;
        const double jn = f * j1 - j0, yn = f * y1 - y0;
        j0 = j1;
        j1 = jn;
        y0 = y1;
        y1 = yn;
    }
    return {Scaled::from(j1), Scaled::from(y1)};
}

ScaledJY steed_jy(double xnu, double x) {
    if (x >= kHankelMinArg && xnu <= x) return hankel_forward(xnu, x);
    const int nl = (x < 2.0) ? static_cast<int>(xnu + 0.5) : std::max(0, static_cast<int>(xnu - x + 1.5));
    const double xmu = xnu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / kPi;

    // CF1 gives J'_nu / J_nu; isign follows the sign of J_nu relative
    // to the starting value of the downward recurrence.
    int isign = 1;
    double h = std::max(xnu * xi, kTiny);
    double b = xi2 * xnu, d = 0.0, c = h;
    int it = 1;
    for (; it <= kMaxIter; ++it) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b - 1.0 / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) < kEps) break;
    }
    if (it > kMaxIter) throw ToleranceNotMet("bessel: continued fraction CF1 did not converge", NAN, NAN);

    // Downward recurrence from nu to mu, rescaled as it grows.
    double rjl = isign;
    double rjpl = h * rjl;
    const double rjl1 = rjl;
    long scale = 0;
    double fact = xnu * xi;
    for (int l = nl; l >= 1; --l) {
        double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if (std::abs(rjl) > kBig) {
            rjl = std::ldexp(rjl, -500);
            rjpl = std::ldexp(rjpl, -500);
            scale += 500;
        }
    }
    if (rjl == 0.0) rjl = kEps;
    const double f = rjpl / rjl;

    double rjmu, rymu, ry1;
    if (x < 2.0) {
        // Temme's series for Y_mu, Y_{mu+1}; J_mu from the Wronskian.
        const double x2 = 0.5 * x;
        const double pimu = kPi * xmu;
        const double fct = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
        double dd = -std::log(x2);
        double e = xmu * dd;
        const double fct2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
        const TemmeGammas g = temme_gammas(xmu);
        double ff = 2.0 / kPi * fct * (g.gam1 * std::cosh(e) + g.gam2 * fct2 * dd);
        e = std::exp(e);
        double p = e / (g.gampl * kPi);
        double q = 1.0 / (e * kPi * g.gammi);
        const double pimu2 = 0.5 * pimu;
        const double fct3 = std::abs(pimu2) < kEps ? 1.0 : std::sin(pimu2) / pimu2;
        const double r = kPi * pimu2 * fct3 * fct3;
        double cc = 1.0;
        dd = -x2 * x2;
        CompensatedSum<> sum, sum1;
        sum += ff + r * q;
        sum1 += p;
        int i = 1;
        for (; i <= kMaxIter; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
            cc *= dd / i;
            p /= (i - xmu);
            q /= (i + xmu);
            double del = cc * (ff + r * q);
            sum += del;
            double del1 = cc * p - i * del;
            sum1 += del1;
            if (std::abs(del) < (1.0 + std::abs(sum.value())) * kEps) break;
        }
        if (i > kMaxIter) throw ToleranceNotMet("bessel: Temme series did not converge", NAN, NAN);
        rymu = -sum.value();
        ry1 = -sum1.value() * xi2;
        const double rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // Steed's CF2 for (J'_mu + i Y'_mu) / (J_mu + i Y_mu).
        double a = 0.25 - xmu2;
        double p = -0.5 * xi;
        double q = 1.0;
        const double br = 2.0 * x;
        double bi = 2.0;
        double fct = a * xi / (p * p + q * q);
        double cr = br + q * fct;
        double ci = bi + p * fct;
        double den = br * br + bi * bi;
        double dr = br / den;
        double di = -bi / den;
        double dlr = cr * dr - ci * di;
        double dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        int i = 2;
        for (; i <= kMaxIter; ++i) {
            a += 2 * (i - 1);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::abs(dr) + std::abs(di) < kTiny) dr = kTiny;
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if (std::abs(cr) + std::abs(ci) < kTiny) cr = kTiny;
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::abs(dlr - 1.0) + std::abs(dli) < kEps) break;
        }
        if (i > kMaxIter) throw ToleranceNotMet("bessel: continued fraction CF2 did not converge", NAN, NAN);
        const double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        const double rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    ScaledJY out;
    out.j = Scaled::from(rjl1 * (rjmu / rjl), -scale);

    long yscale = 0;
    for (int i = 1; i <= nl; ++i) {
        double rytemp = (xmu + i) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
        if (std::abs(ry1) > kBig) {
            ry1 = std::ldexp(ry1, -500);
            rymu = std::ldexp(rymu, -500);
            yscale += 500;
        }
    }
    out.y = Scaled::from(rymu, yscale);
    return out;
}

// Ascending series; only used where the terms stay within a factor of
// about e^2 of the sum.
Scaled power_series_j(double nu, double x) {
    const double y = 0.25 * x * x;
    CompensatedSum<> sum;
    double term = 1.0;
    sum += term;
    for (int k = 1; k < 1000; ++k) {
        term *= -y / (k * (nu + k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum.value())) break;
    }
    const double s = sum.value();
    if (nu < 160.0) {
        double pref = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
        if (pref > 1e-290 && pref < 1e290) return Scaled::from(pref * s);
    }
    const double lg = nu * std::log(0.5 * x) - std::lgamma(nu + 1.0);
    const double e = std::floor(lg / std::numbers::ln2);
    return Scaled::from(std::exp(lg - e * std::numbers::ln2) * s, static_cast<long>(e));
}

bool use_power_series(double nu, double x) { return x * x <= 4.0 * (nu + 1.0); }

void check_args(double nu, double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(who) + ": argument must be a positive finite real");
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError(std::string(who) + ": order must be a finite real >= 0");
}

}  // namespace

ScaledJY bessel_jy_scaled(double nu, double x) {
    check_args(nu, x, "bessel");
    ScaledJY s = steed_jy(nu, x);
    if (use_power_series(nu, x)) s.j = power_series_j(nu, x);
    return s;
}

ScaledJY reflect_order(double alpha, ScaledJY pos) {
    const double c = cos_pi(alpha), s = sin_pi(alpha);
    ScaledJY neg;
    neg.j = combine(c, pos.j, -s, pos.y);
    neg.y = combine(s, pos.j, c, pos.y);
    return neg;
}

ScaledSequence bessel_seq_scaled(double nu, double x, int nmax) {
    check_args(nu, x, "bessel_jy_seq");
    if (nmax < 0) throw DomainError("bessel_jy_seq: nmax must be >= 0");
    const ScaledJY s0 = bessel_jy_scaled(nu, x);
    const ScaledJY s1 = bessel_jy_scaled(nu + 1.0, x);

    ScaledSequence out;
    out.j.resize(nmax + 1);
    out.y.resize(nmax + 1);

    // Miller: unnormalised u_m = w[m] * 2^shift[m].
    const int ref = abs_greater(s1.j, s0.j) ? 1 : 0;
    const Scaled jref = ref == 0 ? s0.j : s1.j;
    const Scaled jother = ref == 0 ? s1.j : s0.j;
    const int top = std::max(nmax, 1);
    long start = top + static_cast<long>(std::ceil(20.0 + 2.0 * std::sqrt(top * std::max(1.0, x))));
    start = std::max(start, static_cast<long>(std::ceil(x - nu + 20.0 + 8.0 * std::cbrt(x))));

    std::vector<double> w(top + 1);
    std::vector<long> shift(top + 1);
    bool ok = false;
    for (int attempt = 0; attempt < 8 && !ok; ++attempt, start *= 2) {
        double up = 0.0, cur = 1.0;
        long sh = 0;
        for (long m = start; m >= 1; --m) {
            if (m <= top) {
                w[m] = cur;
                shift[m] = sh;
            }
            double down = 2.0 * (nu + m) / x * cur - up;
            up = cur;
            cur = down;
            if (std::abs(cur) > kBig) {
                cur = std::ldexp(cur, -500);
                up = std::ldexp(up, -500);
                sh += 500;
            }
        }
        w[0] = cur;
        shift[0] = sh;
        if (w[ref] == 0.0) continue;
        auto normalised = [&](int m) {
            return Scaled::from(w[m] * (jref.m / w[ref]), shift[m] - shift[ref] + jref.e);
        };
        const Scaled check = normalised(1 - ref);
        const Scaled diff = combine(1.0, check, -1.0, jother);
        const Scaled bound = 1e-12 * jref;
        ok = !abs_greater(diff, bound);
        if (ok || attempt == 7) {
            for (int m = 0; m <= nmax; ++m) out.j[m] = normalised(m);
        }
    }
    if (!ok)
        throw ToleranceNotMet("bessel_jy_seq: backward recurrence failed to normalise", NAN, NAN);
    out.j[0] = s0.j;
    if (nmax >= 1) out.j[1] = s1.j;

    // Forward recurrence for Y on a common exponent.
    out.y[0] = s0.y;
    if (nmax >= 1) {
        out.y[1] = s1.y;
        long ex = std::max(s0.y.e, s1.y.e);
        double a = std::ldexp(s0.y.m, static_cast<int>(std::max(s0.y.e - ex, -2000L)));
        double b = std::ldexp(s1.y.m, static_cast<int>(std::max(s1.y.e - ex, -2000L)));
        for (int m = 1; m < nmax; ++m) {
            double c = 2.0 * (nu + m) / x * b - a;
            a = b;
            b = c;
            if (std::abs(b) > kBig) {
                a = std::ldexp(a, -500);
                b = std::ldexp(b, -500);
                ex += 500;
            }
            out.y[m + 1] = Scaled::from(b, ex);
        }
    }
    return out;
}

}  // namespace detail

BesselEval bessel_jy(double nu, double x) {
    const detail::ScaledJY s = detail::bessel_jy_scaled(nu, x);
    BesselEval e;
    e.nu = nu;
    e.x = x;
    e.j = s.j.value();
    e.y = s.y.value();
    e.j_flag = s.j.flag();
    e.y_flag = s.y.flag();
    return e;
}

double bessel_j(double nu, double x) { return bessel_jy(nu, x).j; }
double bessel_y(double nu, double x) { return bessel_jy(nu, x).y; }

BesselSequence bessel_jy_seq(double nu, double x, int nmax) {
    const detail::ScaledSequence s = detail::bessel_seq_scaled(nu, x, nmax);
    BesselSequence out;
    out.entries.resize(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        BesselEval& e = out.entries[n];
        e.nu = nu + n;
        e.x = x;
        e.j = s.j[n].value();
        e.y = s.y[n].value();
        e.j_flag = s.j[n].flag();
        e.y_flag = s.y[n].flag();
        if (!out.overflow_index && (e.y_flag == RangeFlag::overflow || e.j_flag == RangeFlag::underflow))
            out.overflow_index = n;
    }
    return out;
}

}  // namespace nuderiv
