#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

#include "heavytail/errors.hpp"

namespace heavytail {

struct bisection_options {
    double residual_tol = 1e-9;
    double bracket_tol = 1e-13;
    int max_iterations = 200;
};

struct bisection_result {
    double root = 0.0;
    double residual = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};
    int iterations = 0;
};

/// Plain bisection on [lo, hi]; f(lo) and f(hi) must have opposite signs.
/// Stops when |f(mid)| <= residual_tol or the bracket width falls below
/// bracket_tol.
template <class F>
bisection_result bisect(const F& f, double lo, double hi,
                        const bisection_options& opts = {}) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, {lo, lo}, 0};
    if (fhi == 0.0) return {hi, 0.0, {hi, hi}, 0};
    if (std::signbit(flo) == std::signbit(fhi)) {
        std::ostringstream msg;
        msg << "bisect: no sign change on [" << lo << ", " << hi << "] (f = "
            << flo << ", " << fhi << ")";
        throw numerical_error(msg.str());
    }
    double mid = lo, fmid = flo;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        mid = 0.5 * (lo + hi);
        fmid = f(mid);
        if (std::abs(fmid) <= opts.residual_tol || (hi - lo) <= opts.bracket_tol)
            return {mid, fmid, {lo, hi}, it};
        if (std::signbit(fmid) == std::signbit(flo)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    std::ostringstream msg;
    msg << "bisect: no convergence after " << opts.max_iterations
        << " iterations; residual " << fmid << " on bracket width " << (hi - lo);
    throw numerical_error(msg.str());
}

}  // namespace heavytail
