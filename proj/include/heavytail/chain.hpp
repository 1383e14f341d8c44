#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "heavytail/innovation.hpp"
#include "heavytail/rng.hpp"

namespace heavytail {

enum class drift_sign { down, up };

/// The recursion  next = (x +/- x^gamma + alpha)^+  with target set [0, a].
struct model_spec {
    drift_sign drift = drift_sign::down;
    double gamma = 0.5;    // in (0, 1) strictly
    bool reflect = true;   // apply the positive-part clip
    double target_a = 1.0; // target set [0, a]; a = 0 means the single state 0

    void validate() const;
    /// +/- x^gamma according to the drift sign.
    double drift_term(double x) const;
};

/// One transition of the chain. reflect = false returns the raw value and is
/// only legal when the caller guarantees positivity.
double step(const model_spec& model, double x, double alpha);

/// Trajectory seed: innovations are uniform01(master, stream, step_index),
/// so any single step is reproducible in isolation.
struct trajectory_seed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;
};

struct passage_result {
    std::optional<std::int64_t> tau;  // empty = censored at the horizon
    double hit_value = 0.0;           // state at hitting (when hit)
    double max_excursion = 0.0;       // largest state seen up to tau ^ horizon

    bool hit() const { return tau.has_value(); }
};

/// Generic-sampler variants: sample(u) maps a uniform in (0, 1) to an
/// innovation. Used directly by tests with degenerate laws.
template <class SampleFn>
std::vector<double> simulate_with(const model_spec& model, SampleFn&& sample, double x0,
                                  std::int64_t horizon, trajectory_seed seed) {
    model.validate();
    if (horizon < 1) throw std::invalid_argument("simulate: horizon must be >= 1");
    if (!(x0 >= 0.0)) throw std::invalid_argument("simulate: x0 must be >= 0");
    std::vector<double> trajectory(static_cast<std::size_t>(horizon) + 1);
    trajectory[0] = x0;
    double x = x0;
    for (std::int64_t n = 0; n < horizon; ++n) {
        const double u = rng::uniform01(seed.master, seed.stream,
                                        static_cast<std::uint64_t>(n));
        x = step(model, x, sample(u));
        trajectory[static_cast<std::size_t>(n) + 1] = x;
    }
    return trajectory;
}

template <class SampleFn>
passage_result passage_time_with(const model_spec& model, SampleFn&& sample, double x0,
                                 std::int64_t horizon, trajectory_seed seed) {
    model.validate();
    if (!(x0 > model.target_a)) {
        throw std::domain_error("passage_time: x0 must start outside the target set");
    }
    passage_result result;
    result.max_excursion = x0;
    double x = x0;
    for (std::int64_t n = 1; n <= horizon; ++n) {
        const double u = rng::uniform01(seed.master, seed.stream,
                                        static_cast<std::uint64_t>(n - 1));
        x = step(model, x, sample(u));
        if (x > result.max_excursion) result.max_excursion = x;
        if (x <= model.target_a) {
            result.tau = n;
            result.hit_value = x;
            return result;
        }
    }
    return result;  // censored
}

/// Full trajectory of length horizon+1 with trajectory[0] = x0.
std::vector<double> simulate(const model_spec& model, const innovation_spec& dist,
                             double x0, std::int64_t horizon, trajectory_seed seed);

/// First n >= 1 with state <= target_a, simulated without materializing the
/// trajectory; censored at the horizon. Requires x0 > target_a.
passage_result passage_time(const model_spec& model, const innovation_spec& dist,
                            double x0, std::int64_t horizon, trajectory_seed seed);

enum class decay_variant { plain, shifted };  // f(x) = x - x^gamma (+ 1)

struct hitting_estimate {
    std::int64_t exact_steps = 0;
    double asymptotic = 0.0;  // x0^(1-gamma) / (1-gamma)
};

/// Hitting time of [0, a] for the deterministic iteration of f, together with
/// the x0^(1-gamma)/(1-gamma) asymptotic. The shifted variant has a fixed
/// point at 1 and therefore requires a > 1; the plain variant requires
/// a >= 0.1 (an undershoot past zero counts as hitting).
hitting_estimate deterministic_hitting_time(double gamma, double x0, double a,
                                            decay_variant variant);

}  // namespace heavytail
