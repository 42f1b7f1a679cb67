#pragma once

#include <complex>

namespace nuderiv::detail {

struct AiryReal {
    double ai, aip, bi, bip;
};

// No range check; callers inside the library may go past |x| = 1e4
// (Ai^2 + Bi^2 stays meaningful there even though the phase does not).
AiryReal airy_real(double x);

// Ai and Ai' for general complex z: Maclaurin series for |z| <= 8,
// asymptotic expansion for larger |z| with |arg z| <= 2 pi / 3.
// Throws PathFailure outside that region.
void airy_ai_complex(std::complex<double> z, std::complex<double>& ai, std::complex<double>& aip);

}  // namespace nuderiv::detail
