#pragma once

#include <utility>

#include "heavytail/quadrature.hpp"

namespace heavytail {

/// Natural log of the Gamma function for z > 0 (Lanczos rational
/// approximation, relative accuracy ~1e-14 over [1e-3, 1e3]).
double log_gamma(double z);

/// K(delta, theta) = Gamma(1-theta) * Gamma(theta-delta) / (theta * Gamma(1-delta)),
/// defined for theta in (0,1) and delta < theta. Strictly positive and
/// strictly increasing in delta; K(0, theta) = pi * csc(pi*theta) / theta.
double k_const(double delta, double theta);

/// Quadrature oracle for the identity
///     int_0^inf ((1+u)^delta - 1) u^(-1-theta) du = delta * K(delta, theta),
/// with delta != 0, delta < theta, theta in (0,1).
double k_integral(double delta, double theta, const quadrature_options& opts = {});

/// L(delta, theta) = Gamma(1+delta) * Gamma(-theta) / Gamma(1-theta+delta)
/// for theta in (0,1), delta >= 0, with Gamma(-theta) = Gamma(1-theta)/(-theta).
/// Always negative; L(0, theta) = -1/theta exactly.
double l_const(double delta, double theta);

/// Quadrature oracle for
///     int_0^1 ((1-u)^delta - 1) u^(-1-theta) du = L(delta, theta) + 1/theta,
/// with delta > 0, theta in (0,1).
double l_integral(double delta, double theta, const quadrature_options& opts = {});

struct critical_root {
    double delta0 = 0.0;
    double residual = 0.0;                 // value of the defining equation at delta0
    std::pair<double, double> bracket{0.0, 0.0};
};

/// Unique root of c * K(delta, theta) = 1 on (0, theta).
/// Requires the subcritical condition c * pi * csc(pi*theta) < theta,
/// i.e. c * K(0, theta) < 1; otherwise throws std::domain_error.
critical_root delta0_k(double c, double theta);

/// Unique root of c * L(delta, theta) + delta = 0 on (0, inf).
critical_root delta0_l(double c, double theta);

}  // namespace heavytail
