#pragma once

namespace nuderiv {

constexpr double kDefaultTol = 1e-10;
constexpr int kSeriesTermCap = 5000;

struct SeriesResult {
    double value = 0.0;
    int terms_used = 0;
    // Truncation remainder relative to |value|.
    double tail_estimate = 0.0;
    // Set when the cot/csc combination was evaluated close to a pole of
    // cot(2 nu pi) (for I3 only).
    bool pole_proximity = false;
};

// int_0^x J_nu(t)^2 / t dt
SeriesResult i2_series(double nu, double x, double tol = kDefaultTol);
// int_x^inf J_nu(t)^2 / t dt, i.e. 1/(2 nu) - i2_series
SeriesResult i2_complement(double nu, double x, double tol = kDefaultTol);
// int_x^inf J_nu(t) Y_nu(t) / t dt
SeriesResult i1_series(double nu, double x, double tol = kDefaultTol);
// The same series with nu replaced by -nu: int_x^inf J_{-nu} Y_{-nu} / t dt.
// nu must not be an integer.
SeriesResult i1_variant(double nu, double x, double tol = kDefaultTol);
// int_x^inf J_0(t) Y_0(t) / t dt
SeriesResult i1_series_nu0(double x, double tol = kDefaultTol);
// int_x^inf Y_nu(t)^2 / t dt
SeriesResult i3_series(double nu, double x, double tol = kDefaultTol);
// int_x^inf J_0(t)^2 / t dt
SeriesResult j0_tail_series(double x, double tol = kDefaultTol);

// |sum_{n>=1} (J_n Y_n + 1/(pi n)) - (ln(x/2) + gamma)/pi + J_0 Y_0 / 2|
double product_sum_residual(double x);

}  // namespace nuderiv
