#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>

#include "nuderiv/errors.hpp"

namespace nuderiv {

template <class T>
struct QuadResult {
    T value{};
    double abs_error = 0.0;
    long evaluations = 0;
};

inline constexpr int kQuadMaxDepth = 60;
inline constexpr int kQuadInitialPanels = 16;
// Where the map t = a + u/(1-u) is sampled instead of u = 1.
inline constexpr double kInfiniteEndpoint = 1.0 - 1e-12;

namespace detail {

inline constexpr double kRoundoffFloor = 64 * DBL_EPSILON;

template <class T, class F>
struct Simpson {
    F& f;
    double eps_per_length;  // target absolute error per unit length
    long budget;
    long evals = 0;
    bool capped = false;
    double err = 0.0;

    T call(double t) {
        ++evals;
        return f(t);
    }

    T step(double a, double b, T fa, T fm, T fb, T whole, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const T flm = call(lm), frm = call(rm);
        const double h = b - a;
        // actual node spacings, so ulp-level width errors on short
        // intervals do not masquerade as truncation error
        const T left = ((m - a) / 6.0) * (fa + 4.0 * flm + fm);
        const T right = ((b - m) / 6.0) * (fm + 4.0 * frm + fb);
        const T both = left + right;
        const double delta = std::abs(both - whole);
        // Integrands built from several special functions carry ~1e-15
        // relative noise; refining below that only chases roundoff.
        const bool converged = delta <= 15.0 * eps_per_length * h || delta <= kRoundoffFloor * std::abs(both);
        if (converged || depth >= kQuadMaxDepth || !(lm > a && rm < b) || evals > budget) {
            if (!converged) capped = true;
            err += delta / 15.0;
            return both + (both - whole) / 15.0;
        }
        return step(a, m, fa, flm, fm, left, depth + 1) + step(m, b, fm, frm, fb, right, depth + 1);
    }
};

}  // namespace detail

// Adaptive Simpson on a finite interval.  tol is relative to the size of
// the integral (estimated from the initial panels); abs_floor keeps the
// target finite when the integral is zero.  Throws ToleranceNotMet with the
// best estimate when the depth cap or the evaluation budget is hit.
template <class F>
auto adaptive_simpson(F&& f, double a, double b, double tol, double abs_floor = 0.0, long budget = 20'000'000)
    -> QuadResult<std::decay_t<decltype(f(a))>> {
    using T = std::decay_t<decltype(f(a))>;
    QuadResult<T> out;
    if (a == b) return out;
    if (b < a) {
        auto r = adaptive_simpson(f, b, a, tol, abs_floor, budget);
        r.value = -r.value;
        return r;
    }
    constexpr int n = kQuadInitialPanels;
    double tx[2 * n + 1];
    T fx[2 * n + 1];
    for (int i = 0; i <= 2 * n; ++i) {
        tx[i] = i == 2 * n ? b : a + (b - a) * i / (2.0 * n);
        fx[i] = f(tx[i]);
    }
    T panel[n];
    T coarse{};
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        panel[i] = ((tx[2 * i + 2] - tx[2 * i]) / 6.0) * (fx[2 * i] + 4.0 * fx[2 * i + 1] + fx[2 * i + 2]);
        coarse += panel[i];
        scale += std::abs(panel[i]);
    }
    // |coarse| can cancel for oscillating integrands; the sum of panel
    // magnitudes does not.
    const double target = std::max(tol * std::max(std::abs(coarse), 1e-3 * scale), abs_floor);
    auto& fn = f;
    detail::Simpson<T, std::remove_reference_t<F>> s{fn, target / (b - a), budget};
    s.evals = 2 * n + 1;
    T total{};
    for (int i = 0; i < n; ++i)
        total += s.step(tx[2 * i], tx[2 * i + 2], fx[2 * i], fx[2 * i + 1], fx[2 * i + 2], panel[i], 1);
    out.value = total;
    out.abs_error = s.err;
    out.evaluations = s.evals;
    if (s.capped && out.abs_error > std::max(target, detail::kRoundoffFloor * scale)) {
        double best = 0.0;
        if constexpr (std::is_floating_point_v<T>) best = out.value;
        else best = std::abs(out.value);
        throw ToleranceNotMet("adaptive_simpson: recursion cap reached before the tolerance was met", best,
                              out.abs_error);
    }
    return out;
}

// Integral over [a, inf) through t = a + u/(1-u).
template <class F>
auto adaptive_simpson_inf(F&& f, double a, double tol, double abs_floor = 0.0)
    -> QuadResult<std::decay_t<decltype(f(a))>> {
    auto mapped = [&](double u) {
        u = std::min(u, kInfiniteEndpoint);
        const double v = 1.0 - u;
        return f(a + u / v) * (1.0 / (v * v));
    };
    return adaptive_simpson(mapped, 0.0, 1.0, tol, abs_floor);
}

// Plain-double convenience form.
template <class F>
double adaptive_quad(F&& f, double a, double b, double tol) {
    if (std::isinf(b)) return adaptive_simpson_inf(f, a, tol).value;
    return adaptive_simpson(f, a, b, tol).value;
}

}  // namespace nuderiv
