#pragma once

#include <optional>
#include <string>

#include "heavytail/quadrature.hpp"

namespace heavytail {

enum class support_side { positive_only, negative_only, two_sided };
enum class tail_profile { constant, oscillating };

/// One Pareto-type tail: density c_y * |y|^(-1-theta) beyond the onset y0,
/// where c_y = c for the constant profile and c_y = c * (1 + A sin(ln|y|))
/// for the oscillating one.
struct side_tail {
    double theta = 0.5;  // tail exponent, in (0, 1)
    double c = 0.1;      // tail constant (the limiting value for oscillating profiles)
};

struct innovation_params {
    support_side side = support_side::positive_only;
    std::optional<side_tail> right;  // required when the support includes (0, inf)
    std::optional<side_tail> left;   // required when the support includes (-inf, 0)
    double y0 = 1.0;                 // tail onset; uniform body on [0, y0] per active side
    tail_profile profile = tail_profile::constant;
    double osc_amplitude = 0.0;      // A in [0, 1), only for the oscillating profile
    bool lattice = false;            // round tail samples to the nearest integer >= 1
    // Body masses; when absent they absorb the remainder (split equally for
    // two-sided supports).
    std::optional<double> body_mass_right;
    std::optional<double> body_mass_left;
};

/// An innovation law with heavy polynomial tails, a uniform body on
/// [0, y0] per active side, and exact closed-form CDF/tails. Immutable
/// after construction; all member functions are pure.
class innovation_spec {
public:
    explicit innovation_spec(innovation_params params);

    static innovation_spec positive_pareto(double theta, double c, double y0 = 1.0);
    static innovation_spec negative_pareto(double theta, double c, double y0 = 1.0);
    static innovation_spec two_sided_pareto(double theta_right, double c_right,
                                            double theta_left, double c_left,
                                            double y0 = 1.0);

    /// Lebesgue density; total function (0 off-support).
    double density(double y) const noexcept;

    /// P(alpha > y) for y > 0 (closed form; monotone nonincreasing).
    double tail_right(double y) const;
    /// P(alpha < -y) for y > 0.
    double tail_left(double y) const;
    /// P(alpha <= y), any real y.
    double cdf(double y) const noexcept;

    /// Exact inverse-CDF sample for constant profiles; rejection against the
    /// c(1+A) envelope for oscillating ones, with the auxiliary draws derived
    /// deterministically from the bits of u. Same (spec, u) -> same sample.
    double sample(double u) const;

    /// E(Z^delta 1_[a,b](Z)) for Z the positive part (or the magnitude of the
    /// negative part) of the innovation, computed through the tail-function
    /// identity
    ///   E(phi(Z) 1_[a,b](Z)) = int_[phi(a),phi(b)] P(Z > t^(1/delta)) dt
    ///                          - phi(b) P(Z >= b) + phi(a) P(Z >= a).
    /// b may be infinity, in which case delta < theta is required.
    double truncated_expectation(bool positive_part, double delta, double a, double b,
                                 const quadrature_options& opts = {}) const;

    const innovation_params& params() const { return params_; }
    double tail_mass_right() const { return tail_mass_right_; }
    double tail_mass_left() const { return tail_mass_left_; }
    double body_mass_right() const { return body_mass_right_; }
    double body_mass_left() const { return body_mass_left_; }
    bool has_right_tail() const { return params_.right.has_value(); }
    bool has_left_tail() const { return params_.left.has_value(); }

private:
    double tail_function(const side_tail& tail, double y) const;  // P(|side| > y), y >= y0
    double sample_tail(const side_tail& tail, double survival_mass, double residual,
                       std::uint64_t aux_key) const;

    innovation_params params_;
    double tail_mass_right_ = 0.0;
    double tail_mass_left_ = 0.0;
    double body_mass_right_ = 0.0;
    double body_mass_left_ = 0.0;
};

std::string to_string(support_side side);
std::string to_string(tail_profile profile);

}  // namespace heavytail
