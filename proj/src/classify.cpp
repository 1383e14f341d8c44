#include "heavytail/classify.hpp"

#include <cmath>
#include <sstream>

#include "heavytail/special_functions.hpp"
#include "json.hpp"

namespace heavytail {

namespace {

constexpr double diagonal_tol = 1e-9;

classification undecided(const std::string& clause) {
    classification out;
    out.verdict = regime::undecided;
    out.moment_kind = moment_bound::none_known;
    out.clause = clause;
    return out;
}

classification transient(const std::string& clause) {
    classification out;
    out.verdict = regime::transient;
    out.moment_kind = moment_bound::none_known;
    out.clause = clause;
    return out;
}

classification classify_down_one_sided(const model_spec& model, const innovation_spec& dist) {
    const side_tail& tail = *dist.params().right;
    const double crit = 1.0 - model.gamma;
    const bool oscillating = dist.params().profile == tail_profile::oscillating;

    if (tail.theta > crit + diagonal_tol) {
        classification out;
        out.verdict = regime::recurrent;
        out.moment_kind = moment_bound::value;
        out.q_star = tail.theta / (1.0 - model.gamma);
        out.sharp = true;
        out.boundary_moment_known = true;  // the moment at q_star itself diverges
        out.clause = "down-drift, one-sided positive tail, theta > 1-gamma: recurrent with "
                     "moments of the passage time exactly below theta/(1-gamma)";
        return out;
    }
    if (tail.theta < crit - diagonal_tol)
        return transient(
            "down-drift, one-sided positive tail, theta < 1-gamma: jumps outrun the "
            "drift and the return probability is defective");

    // critical balance theta = 1 - gamma
    if (oscillating)
        return undecided(
            "down-drift critical balance with an oscillating tail constant: "
            "the limit c is required and does not exist");
    const double subcriticality = tail.c * k_const(0.0, tail.theta);  // c*pi*csc/theta
    if (std::abs(subcriticality - 1.0) <= 1e-12)
        return undecided("down-drift critical balance sitting exactly on "
                         "c * pi * csc(pi theta) = theta: not resolved");
    if (subcriticality > 1.0)
        return transient("down-drift critical balance with a supercritical tail "
                         "constant (c * pi * csc(pi theta) > theta)");
    classification out;
    out.verdict = regime::recurrent_critical;
    out.moment_kind = moment_bound::value;
    out.delta0 = delta0_k(tail.c, tail.theta).delta0;
    out.q_star = *out.delta0 / (1.0 - model.gamma);
    out.sharp = true;
    out.boundary_moment_known = false;  // the moment exactly at q_star is open
    out.clause = "down-drift critical balance, subcritical tail constant: recurrent, "
                 "threshold delta0/(1-gamma) from the root of c*K(delta, theta) = 1";
    return out;
}

classification classify_up_opposing(const model_spec& model, const innovation_spec& dist) {
    const side_tail& tail = *dist.params().left;
    const double crit = 1.0 - model.gamma;
    const bool oscillating = dist.params().profile == tail_profile::oscillating;

    if (tail.theta < crit - diagonal_tol) {
        classification out;
        out.verdict = regime::recurrent;
        out.moment_kind = moment_bound::all;
        out.sharp = true;
        out.boundary_moment_known = false;  // no finite threshold exists
        out.clause = "up-drift against a heavier opposing tail, theta < 1-gamma: "
                     "absorption at 0 with all moments finite";
        return out;
    }
    if (tail.theta > crit + diagonal_tol)
        return transient("up-drift, opposing tail too light (theta > 1-gamma): "
                         "the drift wins and 0 is reached with defective probability");
    if (oscillating)
        return undecided("up-drift critical balance with an oscillating tail constant: "
                         "the limit c is required and does not exist");
    classification out;
    out.verdict = regime::recurrent_critical;
    out.moment_kind = moment_bound::value;
    out.delta0 = delta0_l(tail.c, tail.theta).delta0;
    out.q_star = *out.delta0 / tail.theta;
    out.sharp = true;
    out.boundary_moment_known = false;
    out.clause = "up-drift critical balance: recurrent, threshold delta0/theta from "
                 "the root of c*L(delta, theta) + delta = 0";
    return out;
}

classification classify_down_two_sided(const model_spec& model, const innovation_spec& dist) {
    const double theta_right = dist.params().right->theta;
    const double theta_left = dist.params().left->theta;
    const double crit = 1.0 - model.gamma;

    if (theta_right > crit + diagonal_tol) {
        classification out;
        out.verdict = regime::recurrent;
        out.moment_kind = moment_bound::value;
        out.q_star = theta_right / (1.0 - model.gamma);
        out.sharp = false;  // upper bound on the tail only yields q < q_star
        out.boundary_moment_known = false;
        out.clause = "down-drift, two-sided tails, theta_right > 1-gamma: recurrent with "
                     "moments below theta_right/(1-gamma) (bound only)";
        return out;
    }
    if (theta_right < crit - diagonal_tol && theta_left > theta_right)
        return transient("down-drift, two-sided tails, theta_right < 1-gamma with the "
                         "right tail heavier: escape to +infinity has positive probability");
    return undecided("down-drift, two-sided tails: balance not covered by the "
                     "tail-bound results");
}

classification classify_up_two_sided(const model_spec& model, const innovation_spec& dist) {
    const double theta_right = dist.params().right->theta;
    const double theta_left = dist.params().left->theta;
    const double crit = 1.0 - model.gamma;

    if (theta_left > crit + diagonal_tol)
        return transient("up-drift, two-sided tails, theta_left > 1-gamma: the opposing "
                         "tail is too light and the drift escapes");
    if (theta_left < crit - diagonal_tol && theta_right > theta_left) {
        classification out;
        out.verdict = regime::recurrent;
        out.moment_kind = moment_bound::value;
        out.q_star = 1.0;
        out.sharp = false;  // sufficient bound, not claimed sharp
        out.boundary_moment_known = false;
        out.clause = "up-drift, two-sided tails, theta_left < 1-gamma with the left tail "
                     "heavier: recurrent with moments below 1 (bound only)";
        return out;
    }
    return undecided("up-drift, two-sided tails: balance not covered by the "
                     "tail-bound results");
}

}  // namespace

std::string to_string(regime r) {
    switch (r) {
        case regime::recurrent: return "recurrent";
        case regime::recurrent_critical: return "recurrent-critical";
        case regime::transient: return "transient";
        case regime::undecided: return "undecided";
    }
    return "?";
}

classification classify(const model_spec& model, const innovation_spec& dist) {
    model.validate();

    if (model.drift == drift_sign::down) {
        if (!dist.has_right_tail())
            return undecided("down-drift with no heavy positive tail: outside the "
                             "studied family");
        if (!(model.target_a > 1.0))
            throw std::domain_error(
                "classify: down-drift passage analysis needs a target set [0, a] with a > 1");
        return dist.has_left_tail() ? classify_down_two_sided(model, dist)
                                    : classify_down_one_sided(model, dist);
    }

    if (!dist.has_left_tail())
        return undecided("up-drift with no opposing negative tail: outside the "
                         "studied family");
    if (dist.has_right_tail()) {
        if (!(model.target_a > 1.0))
            throw std::domain_error(
                "classify: up-drift passage analysis with two-sided innovations needs a "
                "target set [0, a] with a > 1");
        return classify_up_two_sided(model, dist);
    }
    if (model.target_a != 0.0)
        throw std::domain_error(
            "classify: the up-drift hit-zero analysis requires target_a = 0");
    return classify_up_opposing(model, dist);
}

std::string classification::to_json() const {
    nlohmann::json j;
    j["regime"] = to_string(verdict);
    switch (moment_kind) {
        case moment_bound::value: j["q_star"] = q_star; break;
        case moment_bound::all: j["q_star"] = "all"; break;
        case moment_bound::none_known: j["q_star"] = "none-known"; break;
    }
    if (delta0)
        j["delta0"] = *delta0;
    else
        j["delta0"] = nullptr;
    j["clause"] = clause;
    j["sharp"] = sharp;
    j["boundary_moment_known"] = boundary_moment_known;
    return j.dump(2);
}

}  // namespace heavytail
