#include "heavytail/drift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "heavytail/special_functions.hpp"
#include "json.hpp"

namespace heavytail {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void require_integrable(const innovation_spec& dist, double exponent) {
    if (exponent <= 0.0 || !dist.has_right_tail()) return;
    const double theta = dist.params().right->theta;
    if (!(exponent < theta)) {
        std::ostringstream msg;
        msg << "drift: g^p grows like x^" << exponent
            << " which is not integrable against the right tail (theta = " << theta << ")";
        throw divergence_error(msg.str());
    }
}

// One-step integrand psi(alpha) = g((X + alpha)^+)^p - g(x)^p for fixed x.
struct drift_integrand {
    const model_spec& model;
    const lyapunov_spec& lyap;
    double power;
    double x;
    double shifted;  // X = x + drift term
    double gpx;      // g(x)^p

    double next_state(double alpha) const {
        const double raw = shifted + alpha;
        return (model.reflect && raw < 0.0) ? 0.0 : raw;
    }
    double operator()(double alpha) const {
        return lyap.value_pow(next_state(alpha), power) - gpx;
    }
};

// Integral of psi over [lo, hi] against the innovation law, with the
// reflection mass handled in closed form. Bounds may be infinite.
double drift_integral(const model_spec& model, const innovation_spec& dist,
                      const lyapunov_spec& lyap, double power, double x, double lo,
                      double hi, const quadrature_options& opts) {
    const drift_integrand psi{model, lyap, power,
                              x,     model.drift_term(x) + x,
                              lyap.value_pow(x, power)};
    const double X = psi.shifted;
    const double y0 = dist.params().y0;

    double total = 0.0;

    // Everything at or below the reflection point contributes the exact mass
    // P(alpha <= -X) at the single value g(0)^p - g(x)^p.
    const double reflect_at = model.reflect ? -X : -inf;
    if (lo < reflect_at) {
        const double mass_lo = dist.cdf(std::min(hi, reflect_at));
        const double mass_below = (lo == -inf) ? 0.0 : dist.cdf(lo);
        const double atom_value = lyap.value_pow(0.0, power) - psi.gpx;
        total += atom_value * (mass_lo - mass_below);
    }
    if (hi <= reflect_at) return total;

    // Continuous part on [max(lo, -X), hi]: restrict to the support.
    double a = std::max(lo, reflect_at);
    double b = hi;
    if (!dist.has_left_tail()) a = std::max(a, 0.0);
    if (!dist.has_right_tail()) b = std::min(b, y0);
    if (!(a < b)) return total;

    auto weighted = [&](double alpha) { return psi(alpha) * dist.density(alpha); };

    // Breakpoints: law kinks, the clip kink of g, and a geometric ladder over
    // wide tail stretches so single panels never span orders of magnitude.
    std::vector<double> cuts = {-y0, 0.0, y0};
    if (lyap.clipped || lyap.delta < 1.0) cuts.push_back(1.0 - X);  // next == 1
    for (double m = 2.0 * y0; m < std::min(-a, 1e300); m *= 2.0) cuts.push_back(-m);

    const double finite_cap = std::max({4.0 * std::abs(X), 8.0 * y0, 4.0 * x});
    const double b_finite = std::min(b, finite_cap);
    for (double m = 2.0 * y0; m < b_finite; m *= 2.0) cuts.push_back(m);

    if (b == inf) {
        total += integrate_with_breakpoints(weighted, a, b_finite, cuts, opts).value;
        // Far tail, split exactly: int g(next)^p dmu  -  g(x)^p P(alpha > cap).
        const double theta = dist.params().right->theta;
        const double decay = theta - std::max(power * lyap.delta, 0.0);
        auto tail_part = [&](double alpha) {
            return lyap.value_pow(psi.next_state(alpha), power) * dist.density(alpha);
        };
        total += integrate_tail(tail_part, b_finite, decay, opts).value;
        total -= psi.gpx * dist.tail_right(b_finite);
    } else {
        total += integrate_with_breakpoints(weighted, a, b, cuts, opts).value;
    }
    return total;
}

std::string condition_name(drift_condition_kind kind) {
    switch (kind) {
        case drift_condition_kind::recurrence: return "recurrence";
        case drift_condition_kind::transience: return "transience";
        case drift_condition_kind::moment_upper: return "moment-upper";
        case drift_condition_kind::moment_lower: return "moment-lower";
    }
    return "?";
}

}  // namespace

void lyapunov_spec::validate() const {
    if (delta == 0.0)
        throw std::invalid_argument("lyapunov_spec: delta must be nonzero");
    if (delta < 0.0 && !clipped)
        throw std::invalid_argument(
            "lyapunov_spec: negative delta requires the clipped form (g bounded)");
    if (delta > 0.0 && clipped)
        throw std::invalid_argument("lyapunov_spec: positive delta uses the pure power form");
}

double lyapunov_spec::value(double x) const {
    if (clipped && x < 1.0) return 1.0;
    return std::pow(x, delta);
}

double lyapunov_spec::value_pow(double x, double p) const {
    if (clipped && x < 1.0) return 1.0;
    return std::pow(x, delta * p);
}

double drift_quadrature(const model_spec& model, const innovation_spec& dist,
                        const lyapunov_spec& lyap, double power, double x,
                        const quadrature_options& opts) {
    model.validate();
    lyap.validate();
    if (!(power > 0.0)) throw std::domain_error("drift_quadrature: power must be > 0");
    if (!(x > 0.0)) throw std::domain_error("drift_quadrature: x must be > 0");
    require_integrable(dist, power * lyap.delta);
    return drift_integral(model, dist, lyap, power, x, -inf, inf, opts);
}

asymptotic_drift drift_asymptotic(const model_spec& model, const innovation_spec& dist,
                                  double delta, double x) {
    model.validate();
    if (!(x >= 10.0 * dist.params().y0))
        throw std::domain_error("drift_asymptotic: x must be at least 10 * y0");
    const double gamma = model.gamma;
    const double amp = dist.params().profile == tail_profile::oscillating
                           ? dist.params().osc_amplitude
                           : 0.0;

    asymptotic_drift out;
    if (model.drift == drift_sign::down) {
        if (!dist.has_right_tail())
            throw std::domain_error(
                "drift_asymptotic: the down-drift expansion needs a right tail");
        const side_tail& tail = *dist.params().right;
        if (!(delta < tail.theta))
            throw std::domain_error("drift_asymptotic: requires delta < theta");
        const double k = k_const(delta, tail.theta);
        const double deterministic = -delta * std::pow(x, delta + gamma - 1.0);
        auto value_at = [&](double c) {
            return deterministic + delta * c * k * std::pow(x, delta - tail.theta);
        };
        out.value = value_at(tail.c);
        if (amp > 0.0) {
            const double a = value_at(tail.c * (1.0 - amp));
            const double b = value_at(tail.c * (1.0 + amp));
            out.bracket = {std::min(a, b), std::max(a, b)};
        }
    } else {
        if (!dist.has_left_tail())
            throw std::domain_error(
                "drift_asymptotic: the up-drift expansion needs an opposing left tail");
        const side_tail& tail = *dist.params().left;
        if (!(delta >= 0.0))
            throw std::domain_error("drift_asymptotic: up-drift expansion needs delta >= 0");
        const double l = l_const(delta, tail.theta);
        const double deterministic = delta * std::pow(x, delta + gamma - 1.0);
        auto value_at = [&](double c) {
            return c * l * std::pow(x, delta - tail.theta) + deterministic;
        };
        out.value = value_at(tail.c);
        if (amp > 0.0) {
            const double a = value_at(tail.c * (1.0 - amp));
            const double b = value_at(tail.c * (1.0 + amp));
            out.bracket = {std::min(a, b), std::max(a, b)};
        }
    }
    return out;
}

std::array<double, 4> partition_decomposition(const model_spec& model,
                                              const innovation_spec& dist,
                                              const lyapunov_spec& lyap, double x,
                                              double beta,
                                              const quadrature_options& opts) {
    model.validate();
    lyap.validate();
    if (!(x > 1.0)) throw std::domain_error("partition_decomposition: x must be > 1");
    if (!(beta > 0.0 && beta < 1.0))
        throw std::domain_error("partition_decomposition: beta must lie in (0, 1)");
    require_integrable(dist, lyap.delta);
    const double edge = std::pow(x, beta);
    return {drift_integral(model, dist, lyap, 1.0, x, -inf, -edge, opts),
            drift_integral(model, dist, lyap, 1.0, x, -edge, 0.0, opts),
            drift_integral(model, dist, lyap, 1.0, x, 0.0, edge, opts),
            drift_integral(model, dist, lyap, 1.0, x, edge, inf, opts)};
}

drift_report check_condition(const model_spec& model, const innovation_spec& dist,
                             const lyapunov_spec& lyap, const drift_condition& condition,
                             const std::vector<double>& x_grid,
                             const quadrature_options& opts) {
    model.validate();
    lyap.validate();
    if (x_grid.empty()) throw std::invalid_argument("check_condition: empty grid");
    for (std::size_t i = 0; i + 1 < x_grid.size(); ++i)
        if (!(x_grid[i] < x_grid[i + 1]))
            throw std::invalid_argument("check_condition: grid must be strictly increasing");

    drift_report report;
    report.condition = condition;
    report.lyapunov = lyap;
    report.note = "numerical certificate on the evaluated grid only";

    const auto kind = condition.kind;
    const double lead_power = kind == drift_condition_kind::moment_upper ||
                                      kind == drift_condition_kind::moment_lower
                                  ? condition.p
                                  : 1.0;
    if (kind == drift_condition_kind::recurrence && !(lyap.delta > 0.0))
        throw std::domain_error("check_condition: recurrence needs g increasing (delta > 0)");
    if (kind == drift_condition_kind::transience && !(lyap.delta < 0.0))
        throw std::domain_error("check_condition: transience needs the bounded clipped g");

    double min_c = inf;       // moment_upper: -Dg^p / g^(p-2)
    double min_dg = inf;      // moment_lower (b)
    double max_c2 = -inf;     // moment_lower (c)
    bool all = true;

    for (double x : x_grid) {
        drift_point point;
        point.x = x;
        point.dg = drift_quadrature(model, dist, lyap, lead_power, x, opts);
        try {
            point.asymptotic =
                drift_asymptotic(model, dist, lead_power * lyap.delta, x).value;
        } catch (const std::domain_error&) {
            point.asymptotic.reset();
        }
        switch (kind) {
            case drift_condition_kind::recurrence:
            case drift_condition_kind::transience:
                point.verdict = point.dg <= 0.0;
                break;
            case drift_condition_kind::moment_upper: {
                const double gp2 = lyap.value_pow(x, condition.p - 2.0);
                min_c = std::min(min_c, -point.dg / gp2);
                point.verdict = point.dg < 0.0;
                break;
            }
            case drift_condition_kind::moment_lower: {
                const double dg1 = drift_quadrature(model, dist, lyap, 1.0, x, opts);
                const double dgr = drift_quadrature(model, dist, lyap, condition.r, x, opts);
                min_dg = std::min(min_dg, dg1);
                max_c2 = std::max(max_c2, dgr / lyap.value_pow(x, condition.r - 1.0));
                point.verdict = point.dg >= 0.0;
                break;
            }
        }
        all = all && point.verdict;
        report.points.push_back(point);
    }

    if (kind == drift_condition_kind::transience) {
        // witness: some y outside A = [0, a] with g(y) below inf_A g;
        // for the decreasing clipped g any y > max(a, 1) works.
        const double a = model.target_a;
        const double inf_a = std::min(lyap.value(0.0), lyap.value(a));
        const double y = 2.0 * std::max(a, 1.0);
        report.transience_witness = lyap.value(y) < inf_a;
        all = all && report.transience_witness;
    }
    if (kind == drift_condition_kind::moment_upper) {
        report.witness_c = min_c;
        all = all && min_c > 0.0;
    }
    if (kind == drift_condition_kind::moment_lower) {
        report.witness_c1 = std::max(0.0, -min_dg);
        report.witness_c2 = std::max(0.0, max_c2);
    }
    report.all_pass = all;
    return report;
}

std::string drift_report::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "# heavytail-csv v1: x,dg,asymptotic,verdict\n";
    for (const auto& p : points) {
        out << p.x << ',' << p.dg << ',';
        if (p.asymptotic) out << *p.asymptotic;
        out << ',' << (p.verdict ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string drift_report::to_json() const {
    nlohmann::json j;
    j["condition"] = condition_name(condition.kind);
    j["p"] = condition.p;
    j["r"] = condition.r;
    j["delta"] = lyapunov.delta;
    j["clipped"] = lyapunov.clipped;
    j["grid_points"] = points.size();
    j["all_pass"] = all_pass;
    j["note"] = note;
    switch (condition.kind) {
        case drift_condition_kind::transience:
            j["transience_witness"] = transience_witness;
            break;
        case drift_condition_kind::moment_upper:
            j["witness_c"] = witness_c;
            break;
        case drift_condition_kind::moment_lower:
            j["witness_c1"] = witness_c1;
            j["witness_c2"] = witness_c2;
            break;
        default:
            break;
    }
    return j.dump(2);
}

std::vector<double> geometric_grid(double lo, double hi, int points_per_decade) {
    if (!(lo > 0.0 && hi > lo))
        throw std::invalid_argument("geometric_grid: need 0 < lo < hi");
    if (points_per_decade < 1)
        throw std::invalid_argument("geometric_grid: points_per_decade must be >= 1");
    const double decades = std::log10(hi / lo);
    const int n = std::max(1, static_cast<int>(std::ceil(decades * points_per_decade)));
    std::vector<double> grid(n + 1);
    for (int i = 0; i <= n; ++i)
        grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / n);
    grid.back() = hi;
    return grid;
}

double proof_recipe_beta(const model_spec& model, const innovation_spec& dist) {
    model.validate();
    if (model.drift == drift_sign::down) return 0.5 * model.gamma;
    if (!dist.has_left_tail())
        throw std::domain_error("proof_recipe_beta: up drift needs a left tail");
    const double lo = std::min((1.0 - model.gamma) / dist.params().left->theta, 1.0);
    return 0.5 * (lo + 1.0);
}

lyapunov_spec proof_recipe_lyapunov(const model_spec& model, const innovation_spec& dist) {
    model.validate();
    const double gamma = model.gamma;
    const double crit = 1.0 - gamma;
    const double tol = 1e-9;

    if (model.drift == drift_sign::down) {
        if (!dist.has_right_tail())
            throw std::domain_error("proof_recipe_lyapunov: down drift needs a right tail");
        const double theta = dist.params().right->theta;
        if (dist.has_left_tail()) {
            const double theta_left = dist.params().left->theta;
            if (theta > crit + tol) {
                // recurrence window: delta in ((1-gamma-beta*theta)/(1-theta), theta)
                const double beta = proof_recipe_beta(model, dist);
                const double lo =
                    std::max(0.0, (1.0 - gamma - beta * theta) / (1.0 - theta));
                if (!(lo < theta))
                    throw std::domain_error(
                        "proof_recipe_lyapunov: empty feasibility window");
                return lyapunov_spec::power(0.5 * (lo + theta));
            }
            if (theta < crit - tol && theta_left > theta) {
                // transience window: beta in (b, 1), delta in (0, beta(1+tl-tr)-1)
                const double b = std::max(gamma / (1.0 - theta),
                                          1.0 / (1.0 + theta_left - theta));
                if (!(b < 1.0))
                    throw std::domain_error(
                        "proof_recipe_lyapunov: empty feasibility window");
                const double beta = 0.5 * (b + 1.0);
                const double cap = beta * (1.0 + theta_left - theta) - 1.0;
                return lyapunov_spec::clipped_power(-0.5 * cap);
            }
            throw std::domain_error(
                "proof_recipe_lyapunov: no recipe covers this two-sided balance");
        }
        if (theta > crit + tol) return lyapunov_spec::power(0.5 * theta);
        if (theta < crit - tol) return lyapunov_spec::clipped_power(-0.2);
        // critical balance: stay below the root of c K(., theta) = 1
        const double c = dist.params().right->c;
        return lyapunov_spec::power(0.5 * delta0_k(c, theta).delta0);
    }

    if (!dist.has_left_tail())
        throw std::domain_error("proof_recipe_lyapunov: up drift needs an opposing left tail");
    const double theta = dist.params().left->theta;
    if (dist.has_right_tail()) {
        const double theta_right = dist.params().right->theta;
        if (theta < crit - tol && theta_right > theta) {
            // recurrence window of the tail-bound regime
            const double beta =
                0.5 * (gamma * theta / theta_right + std::min(1.0 - theta, 1.0));
            const double lo = std::max({(theta - beta * theta_right) / (1.0 - gamma),
                                        (theta - beta * theta_right) / (1.0 - beta), 0.0});
            if (!(lo < theta))
                throw std::domain_error("proof_recipe_lyapunov: empty feasibility window");
            return lyapunov_spec::power(0.5 * (lo + theta));
        }
        if (theta > crit + tol) {
            const double beta = proof_recipe_beta(model, dist);
            const double cap = beta * theta - (1.0 - gamma);
            return lyapunov_spec::clipped_power(-0.5 * std::max(cap, 1e-3));
        }
        throw std::domain_error(
            "proof_recipe_lyapunov: no recipe covers this two-sided balance");
    }
    if (theta < crit - tol) return lyapunov_spec::power(0.5);
    if (theta > crit + tol) {
        const double beta = proof_recipe_beta(model, dist);
        const double cap = beta * theta - (1.0 - gamma);
        return lyapunov_spec::clipped_power(-0.5 * std::max(cap, 1e-3));
    }
    const double c = dist.params().left->c;
    return lyapunov_spec::power(0.5 * delta0_l(c, theta).delta0);
}

}  // namespace heavytail
