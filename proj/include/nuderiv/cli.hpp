#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nuderiv/order_deriv.hpp"

namespace nuderiv::cli {

enum ExitCode { ok = 0, selftest_failed = 1, bad_input = 2, tolerance = 3 };

struct SweepRow {
    double nu = 0, x = 0, z = 0;
    std::optional<double> jhat_series, jhat_uniform, jhat_oracle;
    std::optional<double> yhat_series, yhat_uniform, yhat_oracle;
    // max over J and Y of |method/oracle - 1|
    std::optional<double> rel_gap_uniform, rel_gap_series;
    // max over J and Y of |method - oracle| / envelope
    std::optional<double> env_gap_uniform, env_gap_series;
};

// Scale used for errors of dJ/dnu, dY/dnu that stays away from zero:
// |value| below the turning point, the Hankel modulus beyond it.
double deriv_envelope(double nu, double z, double jhat, double yhat, bool for_j);

double parse_number(const std::string& s);  // locale-independent
// "a:b:n" -> n points from a to b inclusive
std::vector<double> parse_range(const std::string& text);
std::vector<double> parse_list(const std::string& text);

std::vector<SweepRow> sweep_rows(const std::vector<double>& nus, const std::vector<double>& xs, bool series, bool uniform,
                                 bool oracle, const DerivOptions& opts);
std::string csv_header();
std::string csv_line(const SweepRow& r);
std::string format_csv_double(std::optional<double> v);
// Inverse of csv_line (for round-trip checks).
SweepRow parse_csv_line(const std::string& line);

struct Table1Entry {
    int l;
    double x;
    double reference;  // nan where the reference table has no entry
    double eta;
};
// Reference grid: x in {0.1, 0.5, 0.75, 0.99} for l = 1..3 and x in {1, 5, 10} for l = 4.
std::vector<Table1Entry> table1(double nu, double tol = 1e-12);

struct SuiteResult {
    std::string name;
    bool pass;
    double worst;
    double limit;
};
// |d/dzeta G - zeta^k y_i y_j| over the Airy envelope of the integrand.
double g_derivative_residual(int i, int j, int k, double nu, double zeta);

std::vector<SuiteResult> selftest(double perturb_c = 0.0);

// Full command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nuderiv::cli
