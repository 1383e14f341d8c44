#include "heavytail/special_functions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "heavytail/root_finding.hpp"

namespace heavytail {

namespace {

// Lanczos approximation, g = 7, 9 terms (Godfrey coefficients).
constexpr double lanczos_g = 7.0;
constexpr double lanczos_coeff[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double half_log_two_pi = 0.91893853320467274178;

void require_theta(double theta, const char* who) {
    if (!(theta > 0.0 && theta < 1.0)) {
        std::ostringstream msg;
        msg << who << ": theta must lie in (0, 1), got " << theta;
        throw std::domain_error(msg.str());
    }
}

}  // namespace

double log_gamma(double z) {
    if (!(z > 0.0)) {
        std::ostringstream msg;
        msg << "log_gamma: argument must be positive, got " << z;
        throw std::domain_error(msg.str());
    }
    const double zm1 = z - 1.0;
    double series = lanczos_coeff[0];
    for (int i = 1; i < 9; ++i) series += lanczos_coeff[i] / (zm1 + i);
    const double t = zm1 + lanczos_g + 0.5;
    return half_log_two_pi + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

double k_const(double delta, double theta) {
    require_theta(theta, "k_const");
    if (!(delta < theta)) {
        std::ostringstream msg;
        msg << "k_const: delta must be < theta, got delta = " << delta
            << ", theta = " << theta;
        throw std::domain_error(msg.str());
    }
    // All three Gamma arguments are positive here, so K > 0 with no sign flips.
    const double log_k =
        log_gamma(1.0 - theta) + log_gamma(theta - delta) - log_gamma(1.0 - delta);
    return std::exp(log_k) / theta;
}

double k_integral(double delta, double theta, const quadrature_options& opts) {
    require_theta(theta, "k_integral");
    if (!(delta < theta))
        throw std::domain_error("k_integral: delta must be < theta");
    if (delta == 0.0)
        throw std::domain_error("k_integral: delta must be nonzero");

    // Piece on [0, 1]: integrand = h(u) * u^(-theta) with h(0) = delta.
    auto h_near_zero = [delta](double u) {
        return std::expm1(delta * std::log1p(u)) / u;
    };
    const quadrature_result near_zero =
        integrate_power_endpoint(h_near_zero, 1.0 - theta, 1.0, opts);

    // Piece on [1, inf): with t = 1/u,
    //   int_1^inf ((1+u)^delta - 1) u^(-1-theta) du
    //     = int_0^1 (1+t)^delta t^(theta-delta-1) dt - 1/theta.
    auto h_tail = [delta](double t) { return std::pow(1.0 + t, delta); };
    const quadrature_result tail =
        integrate_power_endpoint(h_tail, theta - delta, 1.0, opts);

    return near_zero.value + tail.value - 1.0 / theta;
}

double l_const(double delta, double theta) {
    require_theta(theta, "l_const");
    if (!(delta >= 0.0)) {
        std::ostringstream msg;
        msg << "l_const: delta must be >= 0, got " << delta;
        throw std::domain_error(msg.str());
    }
    // Gamma(-theta) = Gamma(1-theta) / (-theta): a single recurrence step keeps
    // every log_gamma argument positive, and makes L < 0 explicit.
    const double log_mag =
        log_gamma(1.0 + delta) + log_gamma(1.0 - theta) - log_gamma(1.0 - theta + delta);
    return -std::exp(log_mag) / theta;
}

double l_integral(double delta, double theta, const quadrature_options& opts) {
    require_theta(theta, "l_integral");
    if (!(delta > 0.0))
        throw std::domain_error("l_integral: delta must be > 0");

    // [0, 1/2]: integrand = h(u) * u^(-theta) with h(0) = -delta.
    auto h_near_zero = [delta](double u) {
        return std::expm1(delta * std::log1p(-u)) / u;
    };
    const quadrature_result near_zero =
        integrate_power_endpoint(h_near_zero, 1.0 - theta, 0.5, opts);

    // [1/2, 1]: regular integrand (the (1-u)^delta endpoint is handled by
    // adaptive refinement).
    auto integrand = [delta, theta](double u) {
        return std::expm1(delta * std::log1p(-u)) * std::pow(u, -1.0 - theta);
    };
    const quadrature_result upper = integrate(integrand, 0.5, 1.0, opts);

    return near_zero.value + upper.value;
}

critical_root delta0_k(double c, double theta) {
    require_theta(theta, "delta0_k");
    if (!(c > 0.0)) throw std::domain_error("delta0_k: c must be > 0");
    const double k_at_zero = k_const(0.0, theta);
    if (!(c * k_at_zero < 1.0)) {
        std::ostringstream msg;
        msg << "delta0_k: supercritical tail constant (c * K(0, theta) = "
            << c * k_at_zero
            << " >= 1); no root of c*K = 1 exists in (0, theta)";
        throw std::domain_error(msg.str());
    }
    auto f = [&](double delta) { return c * k_const(delta, theta) - 1.0; };

    // K is strictly increasing in delta with K -> inf as delta -> theta, so
    // shrinking the margins geometrically always captures the sign change.
    double lo = theta / 4.0;
    for (int i = 0; i < 200 && f(lo) >= 0.0; ++i) lo *= 0.5;
    double margin = theta / 4.0;
    double hi = theta - margin;
    for (int i = 0; i < 200 && f(hi) <= 0.0; ++i) {
        margin *= 0.5;
        hi = theta - margin;
    }
    if (f(lo) >= 0.0 || f(hi) <= 0.0)
        throw numerical_error("delta0_k: failed to bracket the root in (0, theta)");

    const bisection_result r = bisect(f, lo, hi);
    return {r.root, r.residual, r.bracket};
}

critical_root delta0_l(double c, double theta) {
    require_theta(theta, "delta0_l");
    if (!(c > 0.0)) throw std::domain_error("delta0_l: c must be > 0");
    auto f = [&](double delta) { return c * l_const(delta, theta) + delta; };

    // f(0) = -c/theta < 0 and |L| grows sublinearly (~ delta^theta), so f is
    // eventually positive; expand the upper bracket geometrically.
    double hi = 1.0;
    while (f(hi) <= 0.0) {
        hi *= 2.0;
        if (hi > 1e6)
            throw numerical_error(
                "delta0_l: bracket expansion exceeded delta = 1e6 without a sign change");
    }
    const bisection_result r = bisect(f, 0.0, hi);
    return {r.root, r.residual, r.bracket};
}

}  // namespace heavytail
