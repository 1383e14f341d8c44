#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <sstream>
#include <vector>

#include "heavytail/errors.hpp"

namespace heavytail {

struct quadrature_options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_panels = 10000;
};

struct quadrature_result {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    int panels = 0;

    quadrature_result& operator+=(const quadrature_result& other) {
        value += other.value;
        error += other.error;
        panels += other.panels;
        return *this;
    }
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights (positive half, symmetric rule).
inline constexpr double gk_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double gk_weights_k[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gk_weights_g[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct panel {
    double a, b;
    double value;
    double error;
    bool operator<(const panel& other) const { return error < other.error; }
};

template <class F>
panel evaluate_panel(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = gk_weights_k[7] * f(mid);
    double gauss = gk_weights_g[3] * f(mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * gk_nodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += gk_weights_k[i] * fsum;
        if (i % 2 == 1) gauss += gk_weights_g[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over the finite interval [a, b].
/// Panels are refined worst-first until the summed error estimate meets
/// max(abs_tol, rel_tol * |value|) or the panel budget is exhausted.
template <class F>
quadrature_result integrate(const F& f, double a, double b,
                            const quadrature_options& opts = {}) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw std::domain_error("integrate: endpoints must be finite");
    if (a == b) return {0.0, 0.0, 0};
    if (a > b) {
        quadrature_result r = integrate(f, b, a, opts);
        r.value = -r.value;
        return r;
    }

    std::priority_queue<detail::panel> queue;
    queue.push(detail::evaluate_panel(f, a, b));
    double total_value = queue.top().value;
    double total_error = queue.top().error;
    int panels = 1;

    while (total_error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total_value))) {
        if (panels >= opts.max_panels) {
            std::ostringstream msg;
            msg << "integrate: panel budget " << opts.max_panels
                << " exhausted, achieved abs error " << total_error
                << " on value " << total_value;
            throw numerical_error(msg.str());
        }
        detail::panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; accept what we have
            queue.push({worst.a, worst.b, worst.value, 0.0});
            total_error -= worst.error;
            continue;
        }
        detail::panel left = detail::evaluate_panel(f, worst.a, mid);
        detail::panel right = detail::evaluate_panel(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    return {total_value, total_error, panels};
}

/// Integrates f over [a, b] with the interior breakpoints treated as hard
/// panel boundaries (kinks of the integrand).
template <class F>
quadrature_result integrate_with_breakpoints(const F& f, double a, double b,
                                             std::vector<double> breakpoints,
                                             const quadrature_options& opts = {}) {
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    quadrature_result total;
    quadrature_options piece_opts = opts;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double lo = std::clamp(breakpoints[i], a, b);
        const double hi = std::clamp(breakpoints[i + 1], a, b);
        if (hi <= lo) continue;
        piece_opts.max_panels = opts.max_panels - total.panels;
        total += integrate(f, lo, hi, piece_opts);
    }
    return total;
}

/// Computes the singular-endpoint integral
///     int_0^b  h(u) * u^(power-1) du,   power > 0, h smooth at 0,
/// by the substitution u = v^(1/power), which removes the singularity exactly:
///     = (1/power) * int_0^(b^power) h(v^(1/power)) dv.
template <class F>
quadrature_result integrate_power_endpoint(const F& h, double power, double b,
                                           const quadrature_options& opts = {}) {
    if (!(power > 0)) throw std::domain_error("integrate_power_endpoint: power must be > 0");
    if (!(b > 0)) return {0.0, 0.0, 0};
    const double inv = 1.0 / power;
    auto transformed = [&](double v) { return h(std::pow(v, inv)) * inv; };
    return integrate(transformed, 0.0, std::pow(b, power), opts);
}

/// Computes int_lower^inf f(u) du for an integrand decaying like
/// u^(-1-decay) (decay > 0), via u = lower/t followed by the power-endpoint
/// substitution. c(u) = f(u) * u^(1+decay) must extend continuously to
/// u = inf (bounded oscillation is fine).
template <class F>
quadrature_result integrate_tail(const F& f, double lower, double decay,
                                 const quadrature_options& opts = {}) {
    if (!(lower > 0)) throw std::domain_error("integrate_tail: lower bound must be > 0");
    if (!(decay > 0)) throw divergence_error("integrate_tail: non-integrable tail (decay <= 0)");
    // int_L^inf f(u) du = int_0^1 f(L/t) * L / t^2 dt; near t = 0 the
    // integrand behaves like t^(decay-1) times a bounded factor.
    auto h = [&](double t) {
        const double u = lower / t;
        return f(u) * u * u / lower * std::pow(t, 1.0 - decay);
    };
    return integrate_power_endpoint(h, decay, 1.0, opts);
}

}  // namespace heavytail
