// Series for the Bessel-product integrals int J^2/t, int J Y/t, int Y^2/t.
//
// The J Y series converges only like n^-3 because J_mu Y_mu ~ -1/(pi mu).
// Writing d(mu) = J_mu Y_mu + 1/(pi mu) and expanding the product in its
// ascending series
//     J_mu Y_mu = J_mu^2 cot(mu pi) - (1/(pi mu)) sum_k C(2k,k) y^k / prod_{j<=k} (mu^2 - j^2),
// (y = x^2/4) the k-th piece telescopes over mu, mu+1, ... :
//     sum_{m>=0} d(mu+m) = -(1/pi) sum_k C(2k,k) y^k / (2k (mu-k)(mu-k+1)...(mu+k-1))
// up to terms of size J_mu^2.  Once mu is well past x this sums the whole
// remainder in closed form.

#include "nuderiv/product_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "nuderiv/compensated.hpp"
#include "nuderiv/detail/scaled.hpp"
#include "nuderiv/errors.hpp"
#include "nuderiv/specfun.hpp"

namespace nuderiv {

namespace {

using detail::Scaled;
using detail::ScaledJY;
using detail::ScaledSequence;

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kDiffStep = 1e-5;

void check(double nu, double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(who) + ": x must be a positive finite real");
    if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError(std::string(who) + ": nu must be a positive finite real");
}

// Where the direct sum hands over to the closed tail.
double tail_start_order(double x) { return std::max(2.0 * x + 20.0, 30.0); }

struct TailSum {
    double value;       // sum_{m>=0} d(mu+m)
    double derivative;  // its mu-derivative, excluding the -1/(pi mu) part
    double last_term;
};

TailSum closed_tail(double mu, double x) {
    const double y = 0.25 * x * x;
    CompensatedSum<> val, der;
    double c = 1.0;       // C(2k,k) y^k / prod
    double harm = 0.0;    // sum_{j=-k}^{k-1} 1/(mu + j)
    double last = 0.0;
    for (int k = 1; k < static_cast<int>(mu) - 1; ++k) {
        c *= 2.0 * (2.0 * k - 1) / k * y / ((mu - k) * (mu + k - 1));
        harm += 1.0 / (mu - k) + 1.0 / (mu + k - 1);
        const double term = c / (2.0 * k);
        val += term;
        der += -term * harm;
        last = term;
        if (std::abs(term) < 1e-18 * std::abs(val.value())) break;
    }
    return {-val.value() / kPi, -der.value() / kPi, std::abs(last) / kPi};
}

// d(mu) for mu < 0 from order alpha = -mu > 0 data:
// J_{-a} Y_{-a} = cos(2 a pi) J_a Y_a + (1/2) sin(2 a pi) (J_a^2 - Y_a^2)
double product_negative(double alpha, Scaled j, Scaled y) {
    const double p = (j * y).value();
    const double j2 = (j * j).value(), y2 = (y * y).value();
    return detail::cos_pi(2.0 * alpha) * p + 0.5 * detail::sin_pi(2.0 * alpha) * (j2 - y2);
}

struct DSum {
    double total;   // sum_{n>=0} d(mu0 + n)
    double first;   // d(mu0)
    int terms;
    double tail_rel;
};

// sum_{n>=0} d(mu0+n), mu0 any real that is not 0, -1, -2, ...
DSum sum_products(double mu0, double x) {
    if (mu0 <= 0.0 && mu0 == std::floor(mu0)) throw DomainError("product series: order must not be a nonpositive integer");
    const int n_first = mu0 > 0.0 ? 0 : static_cast<int>(std::ceil(-mu0));  // first positive order index
    int n_tail = std::max(n_first + 1, static_cast<int>(std::ceil(tail_start_order(x) - mu0)));

    for (;;) {
        if (n_tail > kSeriesTermCap)
            throw ToleranceNotMet("product series: term cap reached (argument too large for the series route)", NAN, NAN);
        const double base = mu0 + n_first;
        const ScaledSequence pos = detail::bessel_seq_scaled(base, x, n_tail - n_first);
        // J_{mu_tail}^2 must be negligible for the closed tail.
        const double jt2 = (pos.j.back() * pos.j.back()).value();
        if (jt2 > 1e-22 / (mu0 + n_tail)) {
            n_tail += 20;
            continue;
        }
        CompensatedSum<> sum;
        double first = 0.0;
        if (n_first > 0) {
            // negative orders mu0 + n = -(alpha_min + (n_first - 1 - n))
            const double alpha_min = -(mu0 + n_first - 1);
            const ScaledSequence neg = detail::bessel_seq_scaled(alpha_min, x, n_first - 1);
            for (int n = 0; n < n_first; ++n) {
                const int idx = n_first - 1 - n;
                const double alpha = alpha_min + idx;
                const double d = product_negative(alpha, neg.j[idx], neg.y[idx]) - 1.0 / (kPi * alpha);
                if (n == 0) first = d;
                sum += d;
            }
        }
        for (int n = n_first; n < n_tail; ++n) {
            const double mu = mu0 + n;
            const double d = (pos.j[n - n_first] * pos.y[n - n_first]).value() + 1.0 / (kPi * mu);
            if (n == 0) first = d;
            sum += d;
        }
        const TailSum t = closed_tail(mu0 + n_tail, x);
        sum += t.value;
        const double total = sum.value();
        const double err = t.last_term + jt2;
        return {total, first, n_tail, err / std::max(std::abs(total), 1e-300)};
    }
}

// eq. for I1 at order mu0 (positive or negative non-integer)
SeriesResult i1_at(double mu0, double x, double tol) {
    const DSum s = sum_products(mu0, x);
    // sum_n {eps_n J Y + 2/(pi mu_n)} = 2 total - first + 1/(pi mu0)
    const double series = 2.0 * s.total - s.first + 1.0 / (kPi * mu0);
    SeriesResult r;
    r.value = (std::log(0.5 * x) - digamma(mu0)) / (mu0 * kPi) - series / (2.0 * mu0);
    r.terms_used = s.terms;
    const double scale = std::abs(series / (2.0 * mu0));
    r.tail_estimate = s.tail_rel * scale / std::max(std::abs(r.value), 1e-300);
    if (r.tail_estimate > tol)
        throw ToleranceNotMet("i1 series: truncation error above tolerance", r.value, r.tail_estimate);
    return r;
}

// sum_n eps_n J_{nu+n}^2, returned with its relative tail bound.
SeriesResult neumann_j2_sum(double nu, double x, double tol) {
    int n = std::max(1, static_cast<int>(std::ceil(tail_start_order(x) - nu)));
    for (;;) {
        if (n > kSeriesTermCap) throw ToleranceNotMet("i2 series: term cap reached", NAN, NAN);
        const ScaledSequence s = detail::bessel_seq_scaled(nu, x, n + 1);
        CompensatedSum<> sum;
        for (int k = 0; k <= n; ++k) sum += (k == 0 ? 1.0 : 2.0) * (s.j[k] * s.j[k]).value();
        const double total = sum.value();
        const double next = (s.j[n + 1] * s.j[n + 1]).value();
        const double last = (s.j[n] * s.j[n]).value();
        const double ratio = last > 0.0 ? next / last : 0.0;
        const double tail = ratio < 1.0 ? 2.0 * next / (1.0 - ratio) : HUGE_VAL;
        const double rel = total > 0.0 ? tail / total : (tail == 0.0 ? 0.0 : HUGE_VAL);
        if (rel <= tol || (total == 0.0 && tail == 0.0)) return {total, n + 1, rel, false};
        n *= 2;
    }
}

}  // namespace

SeriesResult i2_series(double nu, double x, double tol) {
    check(nu, x, "i2_series");
    SeriesResult s = neumann_j2_sum(nu, x, tol);
    s.value /= 2.0 * nu;
    return s;
}

SeriesResult i2_complement(double nu, double x, double tol) {
    check(nu, x, "i2_complement");
    SeriesResult s = neumann_j2_sum(nu, x, tol);
    const double sum = s.value;
    s.value = (1.0 - sum) / (2.0 * nu);
    s.tail_estimate = s.tail_estimate * sum / std::max(std::abs(1.0 - sum), 1e-300);
    return s;
}

SeriesResult i1_series(double nu, double x, double tol) {
    check(nu, x, "i1_series");
    return i1_at(nu, x, tol);
}

SeriesResult i1_variant(double nu, double x, double tol) {
    check(nu, x, "i1_variant");
    if (nu == std::floor(nu)) throw DomainError("i1_variant: nu must not be an integer");
    return i1_at(-nu, x, tol);
}

namespace {

// I3 through the reflection identity; valid away from half-integer nu.
struct I3Value {
    double value;
    double abs_tail;
    int terms;
};

I3Value i3_direct(double nu, double x, double tol) {
    const SeriesResult c = i2_complement(nu, x, tol);
    const SeriesResult a = i1_at(nu, x, tol);
    const SeriesResult b = i1_at(-nu, x, tol);
    const double s = detail::sin_pi(2.0 * nu), co = detail::cos_pi(2.0 * nu);
    const double ta = 2.0 * co / s * a.value, tb = 2.0 / s * b.value;
    I3Value r;
    r.value = c.value + ta - tb;
    r.abs_tail = c.tail_estimate * std::abs(c.value) + a.tail_estimate * std::abs(ta) + b.tail_estimate * std::abs(tb);
    r.terms = std::max({c.terms_used, a.terms_used, b.terms_used});
    return r;
}

}  // namespace

SeriesResult i3_series(double nu, double x, double tol) {
    check(nu, x, "i3_series");
    constexpr double kOffset = 1e-3;  // in 2 nu
    const double two_nu = 2.0 * nu;
    const double dist = std::abs(two_nu - std::nearbyint(two_nu));
    SeriesResult r;
    if (dist >= 1e-4) {
        const I3Value v = i3_direct(nu, x, tol);
        r.value = v.value;
        r.terms_used = v.terms;
        r.tail_estimate = v.abs_tail / std::max(std::abs(v.value), 1e-300);
        r.pole_proximity = dist < 10.0 * kOffset;
        return r;
    }
    if (nu - kOffset / 2 <= 0.0) throw DomainError("i3_series: nu too close to 0 for the series route");
    // symmetric offsets in 2 nu plus one Richardson level
    double tail = 0.0;
    int terms = 0;
    auto avg = [&](double e) {
        const I3Value p = i3_direct(nu + e / 2, x, tol), m = i3_direct(nu - e / 2, x, tol);
        tail = std::max({tail, p.abs_tail, m.abs_tail});
        terms = std::max({terms, p.terms, m.terms});
        return 0.5 * (p.value + m.value);
    };
    const double a1 = avg(kOffset);
    const double a2 = avg(kOffset / 2);
    r.value = (4.0 * a2 - a1) / 3.0;
    r.terms_used = terms;
    r.tail_estimate = tail / std::max(std::abs(r.value), 1e-300);
    r.pole_proximity = true;
    return r;
}

namespace {

// Order-derivative data at integer orders 0..n_max by symmetric
// differences (h and h/2, one Richardson level).
struct IntegerOrderDerivs {
    std::vector<Scaled> j, y;     // J_n, Y_n
    std::vector<double> dj;       // dJ/dnu at n
    std::vector<double> dprod;    // d(J Y)/dnu at n
};

IntegerOrderDerivs integer_order_derivs(double x, int n_max) {
    IntegerOrderDerivs out;
    const ScaledSequence base = detail::bessel_seq_scaled(0.0, x, n_max);
    out.j = base.j;
    out.y = base.y;
    auto one_step = [&](double h, std::vector<double>& dj, std::vector<double>& dp) {
        const ScaledSequence up = detail::bessel_seq_scaled(h, x, n_max);          // orders n + h
        const ScaledSequence dn = detail::bessel_seq_scaled(1.0 - h, x, n_max);    // orders n + 1 - h
        const ScaledJY minus_h = detail::reflect_order(h, {up.j[0], up.y[0]});     // order -h
        dj.resize(n_max + 1);
        dp.resize(n_max + 1);
        for (int n = 0; n <= n_max; ++n) {
            const Scaled jl = n == 0 ? minus_h.j : dn.j[n - 1];
            const Scaled yl = n == 0 ? minus_h.y : dn.y[n - 1];
            dj[n] = detail::combine(1.0, up.j[n], -1.0, jl).value() / (2.0 * h);
            dp[n] = ((up.j[n] * up.y[n]).value() - (jl * yl).value()) / (2.0 * h);
        }
    };
    std::vector<double> dj1, dp1, dj2, dp2;
    one_step(kDiffStep, dj1, dp1);
    one_step(kDiffStep / 2, dj2, dp2);
    out.dj.resize(n_max + 1);
    out.dprod.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        out.dj[n] = (4.0 * dj2[n] - dj1[n]) / 3.0;
        out.dprod[n] = (4.0 * dp2[n] - dp1[n]) / 3.0;
    }
    return out;
}

}  // namespace

SeriesResult i1_series_nu0(double x, double tol) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("i1_series_nu0: x must be a positive finite real");
    const int n_tail = static_cast<int>(std::ceil(tail_start_order(x)));
    if (n_tail > kSeriesTermCap) throw ToleranceNotMet("i1_series_nu0: term cap reached", NAN, NAN);
    const IntegerOrderDerivs d = integer_order_derivs(x, n_tail);
    CompensatedSum<> sum;
    for (int n = 0; n < n_tail; ++n) sum += (n == 0 ? 1.0 : 2.0) * d.dprod[n];
    // n >= n_tail: 2 d/dmu [sum d(mu+m) - sum 1/(pi(mu+m))]
    const TailSum t = closed_tail(n_tail, x);
    sum += 2.0 * (t.derivative + trigamma(n_tail) / kPi);
    SeriesResult r;
    r.value = -0.5 * sum.value();
    r.terms_used = n_tail;
    // Truncation only.  The order differencing contributes a separate
    // ~1e-8 relative error per term (Bessel accuracy over the step).
    r.tail_estimate = std::abs(t.last_term) / std::max(std::abs(r.value), 1e-300);
    if (r.tail_estimate > tol)
        throw ToleranceNotMet("i1_series_nu0: truncation error above tolerance", r.value, r.tail_estimate);
    return r;
}

SeriesResult j0_tail_series(double x, double tol) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("j0_tail_series: x must be a positive finite real");
    const int n_max = static_cast<int>(std::ceil(tail_start_order(x)));
    if (n_max > kSeriesTermCap) throw ToleranceNotMet("j0_tail_series: term cap reached", NAN, NAN);
    const IntegerOrderDerivs d = integer_order_derivs(x, n_max);
    CompensatedSum<> sum;
    double last = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        last = (n == 0 ? 1.0 : 2.0) * d.j[n].value() * d.dj[n];
        sum += last;
    }
    SeriesResult r;
    r.value = -sum.value();
    r.terms_used = n_max + 1;
    r.tail_estimate = std::abs(last) / std::max(std::abs(r.value), 1e-300);
    if (r.tail_estimate > tol)
        throw ToleranceNotMet("j0_tail_series: truncation error above tolerance", r.value, r.tail_estimate);
    return r;
}

double product_sum_residual(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("product_sum_residual: x must be a positive finite real");
    const DSum s = sum_products(1.0, x);
    const detail::ScaledJY z = detail::bessel_jy_scaled(0.0, x);
    return std::abs(s.total - (std::log(0.5 * x) + kEulerGamma) / kPi + 0.5 * (z.j * z.y).value());
}

}  // namespace nuderiv
