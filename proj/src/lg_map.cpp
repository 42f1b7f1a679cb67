#include "nuderiv/lg_map.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "nuderiv/detail/airy_complex.hpp"
#include "nuderiv/errors.hpp"
#include "nuderiv/specfun.hpp"

namespace nuderiv {

namespace {

constexpr double kA0 = 0.62996052494743658238;  // 2^{-2/3}
constexpr double kTwoThirds = 2.0 / 3.0;

// sum_k (+-1)^k u^k / (2k + 3), |u| < 1
double odd_tail(double u, bool alternate) {
    double sum = 0.0, pw = 1.0;
    for (int k = 0; k < 400; ++k) {
        double term = pw / (2.0 * k + 3.0);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        pw *= alternate ? -u : u;
    }
    return sum;
}

ZetaPoint finish(double x, double zeta, double ratio) {
    ZetaPoint p;
    p.x = x;
    p.zeta = zeta;
    p.ratio = ratio;
    p.phi = std::sqrt(std::sqrt(4.0 * ratio));
    p.near_tp = std::abs(x - 1.0) < 0.2;
    return p;
}

}  // namespace

namespace detail {

// (2/3) zeta^{3/2} = atanh(s) - s = s^3 sum s^{2k}/(2k+3), s^2 = 1 - x^2
// (2/3)(-zeta)^{3/2} = t - atan t = t^3 sum (-1)^k t^{2k}/(2k+3), t^2 = x^2 - 1
ZetaPoint zeta_near_turning_point(double x) {
    if (x == 1.0) return finish(x, 0.0, kA0);
    if (x < 1.0) {
        const double s2 = (1.0 - x) * (1.0 + x);
        const double ratio = std::pow(1.5 * odd_tail(s2, false), kTwoThirds);
        return finish(x, ratio * s2, ratio);
    }
    const double t2 = (x - 1.0) * (x + 1.0);
    const double ratio = std::pow(1.5 * odd_tail(t2, true), kTwoThirds);
    return finish(x, -ratio * t2, ratio);
}

ZetaPoint zeta_closed_form(double x) {
    if (x == 1.0) return finish(x, 0.0, kA0);
    if (x < 1.0) {
        const double s = std::sqrt((1.0 - x) * (1.0 + x));
        const double f = std::log1p(s) - std::log(x) - s;
        const double zeta = std::pow(1.5 * f, kTwoThirds);
        return finish(x, zeta, zeta / ((1.0 - x) * (1.0 + x)));
    }
    const double t = std::sqrt(x - 1.0) * std::sqrt(x + 1.0);
    const double f = t - std::atan(t);
    const double zeta = -std::pow(1.5 * f, kTwoThirds);
    return finish(x, zeta, -zeta / t / t);
}

void zeta_complex(std::complex<double> t, std::complex<double>& zeta, std::complex<double>& ratio) {
    using C = std::complex<double>;
    const C w2 = (t - 1.0) * (t + 1.0);
    const C w = std::sqrt(w2);
    if (std::abs(w) < 0.5 && std::abs(std::arg(w)) <= std::numbers::pi / 3) {
        C sum = 0.0, pw = 1.0;
        for (int k = 0; k < 200; ++k) {
            const C term = pw / (2.0 * k + 3.0);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            pw *= -w2;
        }
        ratio = std::pow(1.5 * sum, kTwoThirds);
        zeta = -ratio * w2;
        return;
    }
    const C f = w - std::atan(w);
    if (f.imag() < -1e-12 * std::abs(f))
        throw PathFailure("zeta continuation left the upper half plane; choose a path closer to the real axis");
    zeta = -std::pow(1.5 * f, kTwoThirds);
    ratio = -zeta / w2;
}

}  // namespace detail

ZetaPoint zeta_of_x(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("zeta_of_x: x must be a positive finite real");
    if (std::abs(x - 1.0) < 0.2) return detail::zeta_near_turning_point(x);
    return detail::zeta_closed_form(x);
}

double x_of_zeta(double eta) {
    if (!std::isfinite(eta)) throw DomainError("x_of_zeta: zeta must be finite");
    if (eta == 0.0) return 1.0;
    // Work in u = ln x, where d zeta / du = -1/sqrt(ratio) is tame.
    double lo, hi, u;
    if (eta < 0.0) {
        const double big = kTwoThirds * std::pow(-eta, 1.5);
        lo = 0.0;
        hi = std::log(big + std::numbers::pi / 2 + 2.0);
        u = (-eta > 1.5) ? std::log(big + std::numbers::pi / 2) : 0.5 * std::log1p(-eta / kA0);
    } else {
        const double f = kTwoThirds * std::pow(eta, 1.5);
        hi = 0.0;
        lo = std::numbers::ln2 - f - 6.0;
        if (lo < -744.0) return 0.0;  // below the smallest subnormal
        u = (eta / kA0 < 0.9) ? 0.5 * std::log1p(-eta / kA0) : std::numbers::ln2 - f - 1.0;
    }
    u = std::min(std::max(u, lo), hi);
    for (int it = 0; it < 200; ++it) {
        const ZetaPoint p = zeta_of_x(std::exp(u));
        const double r = p.zeta - eta;
        if (r == 0.0) break;
        // zeta decreases in u
        if (r > 0.0)
            lo = u;
        else
            hi = u;
        double next = u + r * std::sqrt(p.ratio);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - u) <= 1e-16 * std::max(1.0, std::abs(u))) {
            u = next;
            break;
        }
        u = next;
    }
    return std::exp(u);
}

std::array<double, 3> a_coeffs() {
    return {kA0, 0.4, 3.0 / 35.0 * std::cbrt(4.0)};
}

SplitPoints split_points(double nu) {
    if (!(nu >= 8.0)) throw OrderTooSmall("split_points: nu must be >= 8");
    SplitPoints s;
    s.nu = nu;
    const double d = 1.0 / std::cbrt(nu);
    s.x0 = 1.0 - d;
    s.x1 = 1.0 + d;
    s.zeta0 = zeta_of_x(s.x0).zeta;
    s.zeta1 = zeta_of_x(s.x1).zeta;
    return s;
}

const AiryEnvelope& AiryEnvelope::standard() {
    static const AiryEnvelope env = [] {
        double lo = -1.0, hi = 0.0;
        while (hi - lo > 1e-16) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            const detail::AiryReal a = detail::airy_real(mid);
            if (a.ai - a.bi > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        return AiryEnvelope(0.5 * (lo + hi));
    }();
    return env;
}

double AiryEnvelope::weight(double x) const {
    if (x <= c_) return 1.0;
    const detail::AiryReal a = detail::airy_real(x);
    return std::sqrt(a.bi / a.ai);
}

double AiryEnvelope::modulus(double x) const {
    const detail::AiryReal a = detail::airy_real(x);
    if (x <= c_) return std::hypot(a.ai, a.bi);
    return std::sqrt(2.0 * a.ai * a.bi);
}

namespace {

void require_uniform_order(double nu, const char* who) {
    if (!(nu >= 8.0)) throw OrderTooSmall(std::string(who) + ": nu must be >= 8 for the uniform approximation");
}

}  // namespace

UniformApprox uniform_j(double nu, double x) {
    require_uniform_order(nu, "uniform_j");
    const ZetaPoint p = zeta_of_x(x);
    const double scale = std::pow(nu, -1.0 / 3.0) * p.phi;
    const double arg = std::pow(nu, kTwoThirds) * p.zeta;
    const detail::AiryReal a = detail::airy_real(arg);
    const AiryEnvelope& env = AiryEnvelope::standard();
    // M/E = sqrt2 Ai on the exponential side
    const double m_over_e = arg <= env.c() ? std::hypot(a.ai, a.bi) : std::sqrt(2.0) * a.ai;
    return {scale * a.ai, scale * m_over_e / nu};
}

UniformApprox uniform_y(double nu, double x) {
    require_uniform_order(nu, "uniform_y");
    const ZetaPoint p = zeta_of_x(x);
    const double scale = std::pow(nu, -1.0 / 3.0) * p.phi;
    const double arg = std::pow(nu, kTwoThirds) * p.zeta;
    const detail::AiryReal a = detail::airy_real(arg);
    const AiryEnvelope& env = AiryEnvelope::standard();
    const double m_times_e = arg <= env.c() ? std::hypot(a.ai, a.bi) : std::sqrt(2.0) * a.bi;
    return {-scale * a.bi, scale * m_times_e / nu};
}

std::complex<double> uniform_hankel1(double nu, double x) {
    require_uniform_order(nu, "uniform_hankel1");
    const ZetaPoint p = zeta_of_x(x);
    const double r = std::pow(nu, kTwoThirds) * std::abs(p.zeta);
    const AiryEval a = airy(r, p.zeta >= 0.0 ? AiryRay::plus_two_thirds : AiryRay::minus_third);
    return 2.0 * std::polar(1.0, -std::numbers::pi / 3) * std::pow(nu, -1.0 / 3.0) * p.phi * a.ai;
}

}  // namespace nuderiv
