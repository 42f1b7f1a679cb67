#pragma once

#include <complex>
#include <numbers>

#include "nuderiv/quadrature.hpp"

namespace nuderiv {

// Scale of the Airy argument inside an antiderivative: lambda = nu^{2/3}
// (real) or e^{2 pi i/3} nu^{2/3} (rotated, Ai^2 only).
enum class AiryScale { real, rotated };

struct GValue {
    int i = 1, j = 1, k = 0;  // y_1 = Ai, y_2 = Bi; weight zeta^k
    double nu = 0.0;
    AiryScale scale = AiryScale::real;
    double zeta = 0.0;
    std::complex<double> value;
};

// Closed-form antiderivative in zeta of zeta^k y_i(lambda zeta) y_j(lambda zeta).
GValue g_k(int i, int j, int k, double nu, double zeta, AiryScale scale = AiryScale::real);

enum class LRoute { closed_form, contour };

struct LValue {
    double nu = 0.0;
    double x = 1.0;
    std::complex<double> value;
    LRoute route = LRoute::closed_form;
};

// Leading-order closed form, x >= 1.
LValue l_closed(double nu, double x);
// The defining integral along t = x + s e^{i theta}, s >= 0.  theta must lie
// in (0, pi/2]; the default is the vertical path.
LValue l_contour(double nu, double x, double theta = std::numbers::pi / 2, double tol = 1e-12);

struct FResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool underflow = false;
};

// Direct quadrature of the four Airy-product integrals in t:
//   1: int_x^1 w Ai Bi     2: int_0^x w Ai^2
//   3: int_x^1 w Bi^2      4: int_x^inf w (Ai^2 + Bi^2)
// with w(t) = (zeta/(1-t^2))^{1/2} / t and Airy argument nu^{2/3} zeta(t).
FResult f_integral(int l, double nu, double x, double tol = 1e-12);

// Closed-form leading-order approximations of the same four integrals.
double g_closed(int l, double nu, double x);

}  // namespace nuderiv
