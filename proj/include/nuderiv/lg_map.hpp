#pragma once

#include <array>
#include <complex>

namespace nuderiv {

// x and its turning-point variable zeta, with the smooth ratio
// zeta / (1 - x^2) (never formed as a quotient near x = 1).
struct ZetaPoint {
    double x = 1.0;
    double zeta = 0.0;
    double ratio = 0.0;  // zeta / (1 - x^2) > 0
    double phi = 0.0;    // (4 ratio)^{1/4}
    bool near_tp = false;
};

ZetaPoint zeta_of_x(double x);
double x_of_zeta(double zeta);

// (2^{-2/3}, 2/5, (3/35) 2^{2/3})
std::array<double, 3> a_coeffs();

struct SplitPoints {
    double nu;
    double x0, zeta0;
    double x1, zeta1;
};

SplitPoints split_points(double nu);

// Airy weight and modulus, parametrised by the crossing point c where
// Ai(c) = Bi(c).  standard() computes c once by bisection.
class AiryEnvelope {
public:
    explicit AiryEnvelope(double c) : c_(c) {}
    static const AiryEnvelope& standard();
    double c() const { return c_; }
    double weight(double x) const;   // E
    double modulus(double x) const;  // M
private:
    double c_;
};

inline double weight_E(double x) { return AiryEnvelope::standard().weight(x); }
inline double modulus_M(double x) { return AiryEnvelope::standard().modulus(x); }

struct UniformApprox {
    double value;
    double envelope;  // order-of-magnitude error estimate, not a bound
};

// Leading-order approximations of J_nu(nu x) and Y_nu(nu x).
UniformApprox uniform_j(double nu, double x);
UniformApprox uniform_y(double nu, double x);
// H^(1)_nu(nu x) ~ 2 e^{-pi i/3} nu^{-1/3} phi Ai(e^{2pi i/3} nu^{2/3} zeta)
std::complex<double> uniform_hankel1(double nu, double x);

namespace detail {
// The two branches of zeta_of_x, exposed for the seam test.
ZetaPoint zeta_closed_form(double x);
ZetaPoint zeta_near_turning_point(double x);

// Principal-branch continuation of zeta and of the ratio into the first
// quadrant (Re t >= 1 side).  Throws PathFailure if the branch guard trips.
void zeta_complex(std::complex<double> t, std::complex<double>& zeta, std::complex<double>& ratio);
}  // namespace detail

}  // namespace nuderiv
