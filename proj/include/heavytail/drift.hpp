#pragma once

#include <optional>
#include <array>
#include <string>
#include <vector>

#include "heavytail/chain.hpp"
#include "heavytail/quadrature.hpp"

namespace heavytail {

/// Test function g(x) = x^delta, clipped to 1 on [0, 1) when delta < 0.
struct lyapunov_spec {
    double delta = 0.5;
    bool clipped = false;

    static lyapunov_spec power(double delta) { return {delta, false}; }
    static lyapunov_spec clipped_power(double delta) { return {delta, true}; }

    void validate() const;
    double value(double x) const;
    /// g(x)^p, evaluated as a single power.
    double value_pow(double x, double p) const;
};

/// One-step expected change of g^p along the chain at state x,
///     D g^p (x) = E[ g(step(x, alpha))^p ] - g(x)^p,
/// by adaptive quadrature over the innovation law. The reflection mass
/// P(next = 0) enters in closed form through the tail function; the
/// reflection point, the clip kink of g and the body/tail breakpoints of the
/// law are panel boundaries.
///
/// Throws divergence_error when g^p is not integrable against the right tail
/// (p * delta >= theta_right).
double drift_quadrature(const model_spec& model, const innovation_spec& dist,
                        const lyapunov_spec& lyap, double power, double x,
                        const quadrature_options& opts = {1e-9, 1e-15, 40000});

struct asymptotic_drift {
    double value = 0.0;
    // [lower, upper] band when the tail constant only oscillates in a band
    std::optional<std::pair<double, double>> bracket;
};

/// Leading-order prediction for Dg(x) at large x:
///   down drift: -delta x^(delta+gamma-1) + delta c K(delta,theta) x^(delta-theta)
///   up drift (opposing left tail): c L(delta,theta) x^(delta-theta) + delta x^(delta+gamma-1)
/// For two-sided laws the lighter-side contribution is not included.
/// Requires x >= 10 * y0.
asymptotic_drift drift_asymptotic(const model_spec& model, const innovation_spec& dist,
                                  double delta, double x);

/// The four terms  E[g(next) 1_{A_i}(alpha)] - g(x) mu(A_i)  for the cells
///   A1 = (-inf, -x^beta), A2 = [-x^beta, 0), A3 = [0, x^beta), A4 = [x^beta, inf).
/// Their sum equals drift_quadrature at power 1 by construction.
std::array<double, 4> partition_decomposition(const model_spec& model,
                                              const innovation_spec& dist,
                                              const lyapunov_spec& lyap, double x,
                                              double beta,
                                              const quadrature_options& opts = {1e-11, 1e-15,
                                                                                40000});

enum class drift_condition_kind {
    recurrence,    // Dg <= 0 on the grid, g increasing to infinity
    transience,    // Dg <= 0 on the grid plus a sublevel witness outside [0, a]
    moment_upper,  // Dg^p <= -c g^(p-2) on the grid, for the best feasible c
    moment_lower   // Dg >= -c1, Dg^r <= c2 g^(r-1), Dg^p >= 0 on the grid
};

struct drift_condition {
    drift_condition_kind kind = drift_condition_kind::recurrence;
    double p = 1.0;
    double r = 2.0;
};

struct drift_point {
    double x = 0.0;
    double dg = 0.0;  // quadrature value of the condition's leading drift
    std::optional<double> asymptotic;
    bool verdict = false;
};

struct drift_report {
    drift_condition condition;
    lyapunov_spec lyapunov;
    std::vector<drift_point> points;
    bool all_pass = false;
    bool transience_witness = false;
    double witness_c = 0.0;   // moment_upper: largest feasible c
    double witness_c1 = 0.0;  // moment_lower: smallest feasible c1
    double witness_c2 = 0.0;  // moment_lower: smallest feasible c2
    std::string note;         // scope disclaimer: evidence on the grid only

    std::string to_csv() const;
    std::string to_json() const;
};

/// Evaluates the requested drift inequality at every grid point. The result
/// is a numerical certificate on the grid, not a proof.
drift_report check_condition(const model_spec& model, const innovation_spec& dist,
                             const lyapunov_spec& lyap, const drift_condition& condition,
                             const std::vector<double>& x_grid,
                             const quadrature_options& opts = {1e-9, 1e-15, 40000});

/// Geometric grid with a fixed number of points per decade (endpoints included).
std::vector<double> geometric_grid(double lo, double hi, int points_per_decade = 64);

/// Default partition exponent beta: midpoint of the proof window
/// ((1-gamma)/theta_left, 1) for up drift, (0, gamma) for down drift.
double proof_recipe_beta(const model_spec& model, const innovation_spec& dist);

/// Default Lyapunov function for certifying the regime the tail/drift balance
/// puts the chain in (positive delta for recurrence, clipped negative delta
/// for transience).
lyapunov_spec proof_recipe_lyapunov(const model_spec& model, const innovation_spec& dist);

}  // namespace heavytail
