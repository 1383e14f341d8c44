#include "heavytail/chain.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heavytail {

void model_spec::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        std::ostringstream msg;
        msg << "model_spec: gamma must lie in (0, 1), got " << gamma;
        throw std::invalid_argument(msg.str());
    }
    if (!(target_a >= 0.0))
        throw std::invalid_argument("model_spec: target_a must be >= 0");
}

double model_spec::drift_term(double x) const {
    // gamma = 1/2 dominates the simulation workload; sqrt is much cheaper
    // than the general pow.
    const double pull = (gamma == 0.5) ? std::sqrt(x) : std::pow(x, gamma);
    return drift == drift_sign::down ? -pull : pull;
}

double step(const model_spec& model, double x, double alpha) {
    const double next = x + model.drift_term(x) + alpha;
    return (model.reflect && next < 0.0) ? 0.0 : next;
}

std::vector<double> simulate(const model_spec& model, const innovation_spec& dist,
                             double x0, std::int64_t horizon, trajectory_seed seed) {
    return simulate_with(model, [&dist](double u) { return dist.sample(u); }, x0, horizon,
                         seed);
}

passage_result passage_time(const model_spec& model, const innovation_spec& dist,
                            double x0, std::int64_t horizon, trajectory_seed seed) {
    if (model.target_a >= 0.0 && !(x0 > model.target_a)) {
        std::ostringstream msg;
        msg << "passage_time: x0 = " << x0 << " must start outside the target set [0, "
            << model.target_a << "]";
        throw std::domain_error(msg.str());
    }
    return passage_time_with(model, [&dist](double u) { return dist.sample(u); }, x0,
                             horizon, seed);
}

hitting_estimate deterministic_hitting_time(double gamma, double x0, double a,
                                            decay_variant variant) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("deterministic_hitting_time: gamma must lie in (0, 1)");
    if (!(x0 > a))
        throw std::domain_error("deterministic_hitting_time: x0 must exceed a");
    if (variant == decay_variant::shifted && !(a > 1.0))
        throw std::domain_error(
            "deterministic_hitting_time: the shifted map has a fixed point at 1, "
            "so the target must satisfy a > 1");
    if (variant == decay_variant::plain && !(a >= 0.1))
        throw std::domain_error(
            "deterministic_hitting_time: plain variant requires a >= 0.1");

    const double shift = variant == decay_variant::shifted ? 1.0 : 0.0;
    double x = x0;
    std::int64_t steps = 0;
    while (x > a) {
        x = x - std::pow(x, gamma) + shift;
        ++steps;
    }
    return {steps, std::pow(x0, 1.0 - gamma) / (1.0 - gamma)};
}

}  // namespace heavytail
