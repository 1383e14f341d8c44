#pragma once

#include <optional>
#include <string>

#include "heavytail/chain.hpp"

namespace heavytail {

enum class regime { recurrent, recurrent_critical, transient, undecided };

/// How the passage-time moment threshold is reported.
enum class moment_bound {
    value,      // q_star is a finite threshold
    all,        // every positive moment is finite
    none_known  // no finite-moment guarantee (transient or undecided)
};

struct classification {
    regime verdict = regime::undecided;
    moment_bound moment_kind = moment_bound::none_known;
    double q_star = 0.0;           // meaningful when moment_kind == value
    std::optional<double> delta0;  // root of the critical-balance equation
    std::string clause;            // which decision rule fired
    bool sharp = false;            // q_star known to be the exact threshold
    bool boundary_moment_known = false;  // the moment at q = q_star itself is resolved

    std::string to_json() const;
};

std::string to_string(regime r);

/// Pure decision procedure mapping (drift sign, gamma, tail structure) to an
/// asymptotic regime with moment thresholds. The balance is theta vs 1-gamma,
/// detected with a 1e-9 tolerance on the diagonal; parameter combinations the
/// theory does not cover come back as `undecided`, never as an error.
classification classify(const model_spec& model, const innovation_spec& dist);

}  // namespace heavytail
