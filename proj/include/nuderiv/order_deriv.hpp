#pragma once

#include <complex>
#include <optional>
#include <string>

#include "nuderiv/product_series.hpp"

namespace nuderiv {

enum class Method { automatic, series, uniform, oracle };
enum class Regime { series_preferred, uniform_preferred, both };
// How the Airy-product integrals and L are evaluated in the uniform route.
enum class UniformVariant { quadrature, closed_form };

std::string to_string(Method m);
std::optional<Method> parse_method(const std::string& s);

struct DerivOptions {
    double tol = kDefaultTol;
    // method=automatic switches to the uniform route at this order
    double uniform_threshold = 25.0;
    UniformVariant variant = UniformVariant::quadrature;
};

// Above this argument the series route is refused (its cost grows like z).
inline constexpr double kSeriesMaxArgument = 2000.0;
// Below this order the uniform machinery is not offered.
inline constexpr double kUniformMinOrder = 8.0;

struct OrderArg {
    double nu;
    double z;         // Bessel argument
    double x_scaled;  // z / nu
    Regime regime;

    static OrderArg make(double nu, double z, const DerivOptions& opts = {});
};

struct IIntegrals {
    double i1 = 0.0;  // int_z^inf J Y / t
    double i2 = 0.0;  // int_0^z J^2 / t
    double i3 = 0.0;  // int_z^inf Y^2 / t
};

struct Components {
    IIntegrals ints;
    double j = 0.0;
    double y = 0.0;
};

struct DerivResult {
    double value = 0.0;
    Method method = Method::series;
    double est_rel_err = 0.0;
    std::optional<Components> components;
};

struct DerivPair {
    DerivResult jhat;
    DerivResult yhat;
};

IIntegrals i_integrals_series(double nu, double z, double tol = kDefaultTol);
IIntegrals i_integrals_uniform(double nu, double x_scaled, UniformVariant variant = UniformVariant::quadrature);

// nu pi [Y I2 + J I1]  and  nu pi [J I3 - Y I1] - (pi/2) J
double assemble_jhat(double nu, const Components& c);
double assemble_yhat(double nu, const Components& c);

// Both order derivatives at one point, sharing the integrals.
DerivPair order_derivs(double nu, double z, Method method = Method::automatic, const DerivOptions& opts = {});

DerivResult jhat(double nu, double z, Method method = Method::automatic, const DerivOptions& opts = {});
DerivResult yhat(double nu, double z, Method method = Method::automatic, const DerivOptions& opts = {});
// kind 1: dJ/dnu + i dY/dnu, kind 2: its conjugate
std::complex<double> hankel_hat(double nu, double z, int kind, Method method = Method::automatic,
                                const DerivOptions& opts = {});

// Central differences in the order with one Richardson level.
DerivPair oracle_fd(double nu, double z);
double oracle_step(double nu);

}  // namespace nuderiv
