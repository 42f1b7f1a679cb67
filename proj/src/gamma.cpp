#include <cmath>
#include <numbers>
#include <string>

#include "nuderiv/detail/scaled.hpp"
#include "nuderiv/errors.hpp"
#include "nuderiv/specfun.hpp"

namespace nuderiv {

namespace detail {

// sin(pi x) and cos(pi x) with the argument reduced exactly first, so
// values near integers keep their relative accuracy.
double sin_pi(double x) {
    double n = std::nearbyint(x);
    double r = x - n;
    double s = std::sin(std::numbers::pi * r);
    return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

double cos_pi(double x) {
    double n = std::nearbyint(x);
    double r = x - n;
    double c = std::cos(std::numbers::pi * r);
    return std::fmod(n, 2.0) == 0.0 ? c : -c;
}

}  // namespace detail

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

double gamma_fn(double x) {
    if (std::isnan(x)) throw DomainError("gamma_fn: NaN argument");
    if (is_nonpositive_integer(x)) throw PoleError("gamma_fn: pole at " + std::to_string(x));
    return std::tgamma(x);
}

double digamma(double x) {
    if (std::isnan(x)) throw DomainError("digamma: NaN argument");
    if (is_nonpositive_integer(x)) throw PoleError("digamma: pole at " + std::to_string(x));
    if (x < 0.0) {
        // psi(x) = psi(1 - x) - pi cot(pi x)
        return digamma(1.0 - x) - std::numbers::pi * detail::cos_pi(x) / detail::sin_pi(x);
    }
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double r = 1.0 / (x * x);
    // Bernoulli tail: B_2k / (2k x^2k)
    double tail =
        r * (1.0 / 12 -
             r * (1.0 / 120 -
                  r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12.0))))));
    return acc + std::log(x) - 0.5 / x - tail;
}

double trigamma(double x) {
    if (std::isnan(x)) throw DomainError("trigamma: NaN argument");
    if (is_nonpositive_integer(x)) throw PoleError("trigamma: pole at " + std::to_string(x));
    if (x < 0.0) {
        double s = detail::sin_pi(x);
        return -trigamma(1.0 - x) + std::numbers::pi * std::numbers::pi / (s * s);
    }
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    double r = 1.0 / (x * x);
    double tail =
        1.0 / x + r / 2 +
        r / x *
            (1.0 / 6 -
             r * (1.0 / 30 - r * (1.0 / 42 - r * (1.0 / 30 - r * (5.0 / 66 - r * (691.0 / 2730 - r * 7.0 / 6))))));
    return acc + tail;
}

}  // namespace nuderiv
