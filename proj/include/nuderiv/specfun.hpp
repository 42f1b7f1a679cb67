#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace nuderiv {

double gamma_fn(double x);
double digamma(double x);
double trigamma(double x);

enum class RangeFlag { none, underflow, overflow };

struct BesselEval {
    double nu = 0;
    double x = 0;
    double j = 0;
    double y = 0;
    RangeFlag j_flag = RangeFlag::none;
    RangeFlag y_flag = RangeFlag::none;
};

// J and Y together; cheaper than two scalar calls.
BesselEval bessel_jy(double nu, double x);
double bessel_j(double nu, double x);
double bessel_y(double nu, double x);

struct BesselSequence {
    std::vector<BesselEval> entries;  // orders nu, nu+1, ..., nu+nmax
    // First index whose Y overflowed (or whose J underflowed to zero).
    // Entries at and beyond it carry saturated values.
    std::optional<int> overflow_index;
};

BesselSequence bessel_jy_seq(double nu, double x, int nmax);

// Rays on which Airy functions of complex argument are offered.
enum class AiryRay { pos_real, neg_real, plus_third, minus_third, plus_two_thirds, minus_two_thirds };

double ray_angle(AiryRay ray);

struct AiryEval {
    std::complex<double> z;
    std::complex<double> ai;
    std::complex<double> aip;
    std::optional<double> bi;   // real arguments only
    std::optional<double> bip;
};

AiryEval airy(double x);
// z = r * exp(i * angle(ray)), r >= 0.
AiryEval airy(double r, AiryRay ray);
// Accepts z only if it lies on one of the six rays (to a relative
// angular tolerance of 1e-12); throws DomainError otherwise.
AiryEval airy(std::complex<double> z);

}  // namespace nuderiv
