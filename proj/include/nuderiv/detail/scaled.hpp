#pragma once

#include <cmath>
#include <vector>

#include "nuderiv/specfun.hpp"

// Values whose magnitude may leave the double range: m * 2^e with
// 0.5 <= |m| < 1 (or m == 0).  Used wherever Bessel functions of large
// order and small argument are multiplied back together.
namespace nuderiv::detail {

struct Scaled {
    double m = 0.0;
    long e = 0;

    static Scaled from(double v, long extra_exp = 0) {
        Scaled s;
        if (v == 0.0 || !std::isfinite(v)) {
            s.m = v;
            return s;
        }
        int ex = 0;
        s.m = std::frexp(v, &ex);
        s.e = ex + extra_exp;
        return s;
    }
    double value() const {
        if (e > 4000) return m == 0.0 ? 0.0 : std::copysign(HUGE_VAL, m);
        if (e < -4000) return std::copysign(0.0, m);
        return std::ldexp(m, static_cast<int>(e));
    }
    RangeFlag flag() const {
        if (m == 0.0) return RangeFlag::none;
        double v = value();
        if (std::isinf(v)) return RangeFlag::overflow;
        if (std::abs(v) < 2.2250738585072014e-308) return RangeFlag::underflow;
        return RangeFlag::none;
    }
};

inline Scaled operator*(Scaled a, Scaled b) { return Scaled::from(a.m * b.m, a.e + b.e); }
inline Scaled operator*(double c, Scaled a) { return Scaled::from(c * a.m, a.e); }
inline Scaled operator/(Scaled a, Scaled b) { return Scaled::from(a.m / b.m, a.e - b.e); }

// a*p + b*q without intermediate overflow.
inline Scaled combine(double a, Scaled p, double b, Scaled q) {
    if (p.m == 0.0 || a == 0.0) return b * q;
    if (q.m == 0.0 || b == 0.0) return a * p;
    long top = std::max(p.e, q.e);
    double v = a * std::ldexp(p.m, static_cast<int>(std::max(p.e - top, -2000L))) +
               b * std::ldexp(q.m, static_cast<int>(std::max(q.e - top, -2000L)));
    return Scaled::from(v, top);
}

// |a| compared on the log scale.
inline bool abs_greater(Scaled a, Scaled b) {
    if (a.m == 0.0) return false;
    if (b.m == 0.0) return true;
    if (a.e != b.e) return a.e > b.e;
    return std::abs(a.m) > std::abs(b.m);
}

struct ScaledJY {
    Scaled j;
    Scaled y;
};

ScaledJY bessel_jy_scaled(double nu, double x);

// Orders nu+n for n = 0..nmax, nu >= 0.
struct ScaledSequence {
    std::vector<Scaled> j;
    std::vector<Scaled> y;
};
ScaledSequence bessel_seq_scaled(double nu, double x, int nmax);

// J and Y of order -alpha (alpha >= 0) from those of order alpha.
ScaledJY reflect_order(double alpha, ScaledJY pos);

double sin_pi(double x);
double cos_pi(double x);

}  // namespace nuderiv::detail
