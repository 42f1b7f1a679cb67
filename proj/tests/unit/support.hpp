#pragma once

#include <cmath>
#include <random>

namespace testing_support {

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}
    double operator()(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); }
    // log-uniform on [a, b]
    double log(double a, double b) { return std::exp((*this)(std::log(a), std::log(b))); }
};

// Least-squares slope of log(err) against log(nu).
template <class V>
double log_slope(const V& nus, const V& errs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(nus.size());
    for (std::size_t i = 0; i < nus.size(); ++i) {
        const double x = std::log(nus[i]), y = std::log(errs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testing_support
