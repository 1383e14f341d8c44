#include "heavytail/innovation.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "heavytail/rng.hpp"

namespace heavytail {

namespace {

void validate_tail(const side_tail& tail, const char* which) {
    if (!(tail.theta > 0.0 && tail.theta < 1.0)) {
        std::ostringstream msg;
        msg << "innovation_spec: " << which << " tail exponent must lie in (0, 1), got "
            << tail.theta;
        throw std::invalid_argument(msg.str());
    }
    if (!(tail.c > 0.0)) {
        std::ostringstream msg;
        msg << "innovation_spec: " << which << " tail constant must be > 0, got " << tail.c;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

innovation_spec::innovation_spec(innovation_params params) : params_(std::move(params)) {
    const bool want_right = params_.side != support_side::negative_only;
    const bool want_left = params_.side != support_side::positive_only;
    if (want_right != params_.right.has_value())
        throw std::invalid_argument("innovation_spec: right tail must be given exactly when "
                                    "the support includes the positive axis");
    if (want_left != params_.left.has_value())
        throw std::invalid_argument("innovation_spec: left tail must be given exactly when "
                                    "the support includes the negative axis");
    if (!(params_.y0 > 0.0))
        throw std::invalid_argument("innovation_spec: tail onset y0 must be > 0");
    if (params_.profile == tail_profile::oscillating) {
        if (!(params_.osc_amplitude >= 0.0 && params_.osc_amplitude < 1.0))
            throw std::invalid_argument(
                "innovation_spec: oscillation amplitude must lie in [0, 1)");
    } else if (params_.osc_amplitude != 0.0) {
        throw std::invalid_argument(
            "innovation_spec: oscillation amplitude requires the oscillating profile");
    }
    if (params_.right) validate_tail(*params_.right, "right");
    if (params_.left) validate_tail(*params_.left, "left");

    tail_mass_right_ = params_.right ? tail_function(*params_.right, params_.y0) : 0.0;
    tail_mass_left_ = params_.left ? tail_function(*params_.left, params_.y0) : 0.0;
    const double tail_total = tail_mass_right_ + tail_mass_left_;
    if (!(tail_total < 1.0)) {
        std::ostringstream msg;
        msg << "innovation_spec: tail masses sum to " << tail_total
            << " >= 1; infeasible (c, theta, y0) combination";
        throw std::invalid_argument(msg.str());
    }

    const double remainder = 1.0 - tail_total;
    if (params_.body_mass_right || params_.body_mass_left) {
        body_mass_right_ = params_.body_mass_right.value_or(0.0);
        body_mass_left_ = params_.body_mass_left.value_or(0.0);
        if (body_mass_right_ < 0.0 || body_mass_left_ < 0.0)
            throw std::invalid_argument("innovation_spec: body masses must be >= 0");
        if (!want_right && body_mass_right_ > 0.0)
            throw std::invalid_argument("innovation_spec: right body mass on a negative-only law");
        if (!want_left && body_mass_left_ > 0.0)
            throw std::invalid_argument("innovation_spec: left body mass on a positive-only law");
        if (std::abs(body_mass_right_ + body_mass_left_ - remainder) > 1e-12)
            throw std::invalid_argument(
                "innovation_spec: tail and body masses must sum to 1");
    } else {
        if (params_.side == support_side::two_sided) {
            body_mass_right_ = 0.5 * remainder;
            body_mass_left_ = 0.5 * remainder;
        } else if (want_right) {
            body_mass_right_ = remainder;
        } else {
            body_mass_left_ = remainder;
        }
    }
    // mu([0,1]) > 0 must hold whenever the positive axis carries mass
    if (want_right && !(body_mass_right_ > 0.0))
        throw std::invalid_argument(
            "innovation_spec: the uniform body on [0, y0] must carry positive mass");
}

innovation_spec innovation_spec::positive_pareto(double theta, double c, double y0) {
    innovation_params p;
    p.side = support_side::positive_only;
    p.right = side_tail{theta, c};
    p.y0 = y0;
    return innovation_spec(p);
}

innovation_spec innovation_spec::negative_pareto(double theta, double c, double y0) {
    innovation_params p;
    p.side = support_side::negative_only;
    p.left = side_tail{theta, c};
    p.y0 = y0;
    return innovation_spec(p);
}

innovation_spec innovation_spec::two_sided_pareto(double theta_right, double c_right,
                                                  double theta_left, double c_left,
                                                  double y0) {
    innovation_params p;
    p.side = support_side::two_sided;
    p.right = side_tail{theta_right, c_right};
    p.left = side_tail{theta_left, c_left};
    p.y0 = y0;
    return innovation_spec(p);
}

double innovation_spec::tail_function(const side_tail& tail, double y) const {
    // int_y^inf c_t t^(-1-theta) dt, closed form for both profiles.
    const double power = tail.c * std::pow(y, -tail.theta) / tail.theta;
    if (params_.profile == tail_profile::constant) return power;
    const double theta = tail.theta;
    const double ln_y = std::log(y);
    const double wiggle = std::pow(y, -theta) * (theta * std::sin(ln_y) + std::cos(ln_y)) /
                          (1.0 + theta * theta);
    return power + tail.c * params_.osc_amplitude * wiggle;
}

double innovation_spec::density(double y) const noexcept {
    const double y0 = params_.y0;
    if (y >= y0) {
        if (!params_.right) return 0.0;
        double c_y = params_.right->c;
        if (params_.profile == tail_profile::oscillating)
            c_y *= 1.0 + params_.osc_amplitude * std::sin(std::log(y));
        return c_y * std::pow(y, -1.0 - params_.right->theta);
    }
    if (y >= 0.0) return params_.right ? body_mass_right_ / y0 : 0.0;
    if (y > -y0) return params_.left ? body_mass_left_ / y0 : 0.0;
    if (!params_.left) return 0.0;
    const double m = -y;
    double c_y = params_.left->c;
    if (params_.profile == tail_profile::oscillating)
        c_y *= 1.0 + params_.osc_amplitude * std::sin(std::log(m));
    return c_y * std::pow(m, -1.0 - params_.left->theta);
}

double innovation_spec::tail_right(double y) const {
    if (!(y > 0.0)) throw std::domain_error("tail_right: y must be > 0");
    if (!params_.right) return 0.0;
    if (y >= params_.y0) return tail_function(*params_.right, y);
    return tail_mass_right_ + body_mass_right_ * (params_.y0 - y) / params_.y0;
}

double innovation_spec::tail_left(double y) const {
    if (!(y > 0.0)) throw std::domain_error("tail_left: y must be > 0");
    if (!params_.left) return 0.0;
    if (y >= params_.y0) return tail_function(*params_.left, y);
    return tail_mass_left_ + body_mass_left_ * (params_.y0 - y) / params_.y0;
}

double innovation_spec::cdf(double y) const noexcept {
    if (y > 0.0) return 1.0 - tail_right(y);
    if (y == 0.0) return tail_mass_left_ + body_mass_left_;
    return tail_left(-y);
}

double innovation_spec::sample_tail(const side_tail& tail, double survival_mass,
                                    double residual, std::uint64_t aux_key) const {
    const double y0 = params_.y0;
    if (params_.profile == tail_profile::constant)
        return y0 * std::pow(survival_mass / residual, 1.0 / tail.theta);

    // Oscillating profile: rejection against the constant envelope c * (1 + A).
    // Acceptance rate is at least (1 - A) / (1 + A).
    const double amplitude = params_.osc_amplitude;
    for (std::uint64_t attempt = 0; attempt < 100000; ++attempt) {
        const double r = rng::uniform01(aux_key, 1, 2 * attempt);
        const double accept = rng::uniform01(aux_key, 1, 2 * attempt + 1);
        const double proposal = y0 * std::pow(r, -1.0 / tail.theta);
        const double ratio =
            (1.0 + amplitude * std::sin(std::log(proposal))) / (1.0 + amplitude);
        if (accept <= ratio) return proposal;
    }
    throw numerical_error("innovation_spec::sample: rejection sampler failed to accept");
}

double innovation_spec::sample(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("innovation_spec::sample: u must lie in (0, 1)");
    const double y0 = params_.y0;
    const double left_tail_end = tail_mass_left_;
    const double left_body_end = left_tail_end + body_mass_left_;
    const double right_body_end = left_body_end + body_mass_right_;
    const std::uint64_t aux_key = std::bit_cast<std::uint64_t>(u);

    double y;
    if (u < left_tail_end) {
        y = -sample_tail(*params_.left, tail_mass_left_, u, aux_key);
        if (params_.lattice) y = -std::max(1.0, std::round(-y));
    } else if (u < left_body_end) {
        y = y0 * ((u - left_tail_end) / body_mass_left_ - 1.0);
    } else if (u < right_body_end) {
        y = y0 * (u - left_body_end) / body_mass_right_;
    } else {
        y = sample_tail(*params_.right, tail_mass_right_, 1.0 - u, aux_key);
        if (params_.lattice) y = std::max(1.0, std::round(y));
    }
    return y;
}

double innovation_spec::truncated_expectation(bool positive_part, double delta, double a,
                                              double b, const quadrature_options& opts) const {
    if (!(delta > 0.0))
        throw std::domain_error("truncated_expectation: delta must be > 0");
    if (!(a >= 0.0) || !(b >= a))
        throw std::domain_error("truncated_expectation: need 0 <= a <= b");
    if (a == b) return 0.0;

    const std::optional<side_tail>& tail = positive_part ? params_.right : params_.left;
    auto survival = [&](double z) {
        return positive_part ? tail_right(z) : tail_left(z);
    };

    const double phi_a = std::pow(a, delta);
    const double a_term = (a > 0.0) ? phi_a * survival(a) : 0.0;
    const double y0_breakpoint = std::pow(params_.y0, delta);
    auto integrand = [&](double t) { return survival(std::pow(t, 1.0 / delta)); };

    if (std::isfinite(b)) {
        const double phi_b = std::pow(b, delta);
        const quadrature_result window = integrate_with_breakpoints(
            integrand, phi_a, phi_b, {y0_breakpoint}, opts);
        return window.value - phi_b * survival(b) + a_term;
    }

    // b = infinity: the boundary term vanishes, but the window integral only
    // converges when delta < theta.
    if (tail && !(delta < tail->theta)) {
        std::ostringstream msg;
        msg << "truncated_expectation: E(Z^" << delta
            << ") diverges for tail exponent theta = " << tail->theta;
        throw divergence_error(msg.str());
    }
    if (!tail) {
        // bounded support on this side: nothing beyond y0
        const double cap = y0_breakpoint;
        if (phi_a >= cap) return a_term;
        return integrate(integrand, phi_a, cap, opts).value + a_term;
    }

    const double split = std::max(phi_a, y0_breakpoint);
    double value = a_term;
    if (phi_a < split)
        value += integrate_with_breakpoints(integrand, phi_a, split, {y0_breakpoint}, opts).value;

    const double theta = tail->theta;
    if (params_.profile == tail_profile::constant) {
        // int_split^inf (c/theta) t^(-theta/delta) dt in closed form
        const double q = theta / delta;
        const double z_split = std::pow(split, 1.0 / delta);
        value += (tail->c / theta) * std::pow(z_split, delta - theta) / (q - 1.0);
    } else {
        value += integrate_tail(integrand, split, theta / delta - 1.0, opts).value;
    }
    return value;
}

std::string to_string(support_side side) {
    switch (side) {
        case support_side::positive_only: return "positive";
        case support_side::negative_only: return "negative";
        case support_side::two_sided: return "two-sided";
    }
    return "?";
}

std::string to_string(tail_profile profile) {
    return profile == tail_profile::constant ? "constant" : "oscillating";
}

}  // namespace heavytail
