#include <cmath>

#include "doctest.h"
#include "heavytail/classify.hpp"
#include "heavytail/drift.hpp"
#include "heavytail/special_functions.hpp"
#include "json.hpp"

using namespace heavytail;

namespace {

model_spec model_of(drift_sign drift, double gamma, double a) {
    model_spec m;
    m.drift = drift;
    m.gamma = gamma;
    m.target_a = a;
    return m;
}

}  // namespace

TEST_CASE("down-drift one-sided dispatch") {
    const auto recurrent =
        classify(model_of(drift_sign::down, 0.5, 2.0), innovation_spec::positive_pareto(0.7, 0.2));
    CHECK(recurrent.verdict == regime::recurrent);
    CHECK(recurrent.moment_kind == moment_bound::value);
    CHECK(recurrent.q_star == doctest::Approx(1.4));
    CHECK(recurrent.sharp);
    CHECK(recurrent.boundary_moment_known);

    const auto trans =
        classify(model_of(drift_sign::down, 0.5, 2.0), innovation_spec::positive_pareto(0.3, 0.15));
    CHECK(trans.verdict == regime::transient);
    CHECK(trans.moment_kind == moment_bound::none_known);
}

TEST_CASE("down-drift critical balance") {
    const auto m = model_of(drift_sign::down, 0.5, 2.0);
    // c pi csc(pi/2) = 0.05 pi ~ 0.157 < 0.5
    const auto critical = classify(m, innovation_spec::positive_pareto(0.5, 0.05));
    CHECK(critical.verdict == regime::recurrent_critical);
    REQUIRE(critical.delta0.has_value());
    const auto root = delta0_k(0.05, 0.5);
    CHECK(*critical.delta0 == doctest::Approx(root.delta0).epsilon(1e-12));
    CHECK(critical.q_star == doctest::Approx(root.delta0 / 0.5));
    CHECK(!critical.boundary_moment_known);

    // supercritical constant: 0.2 pi > 0.5
    const auto super = classify(m, innovation_spec::positive_pareto(0.5, 0.2));
    CHECK(super.verdict == regime::transient);

    // oscillating constant on the diagonal is not covered
    innovation_params p;
    p.side = support_side::positive_only;
    p.right = side_tail{0.5, 0.05};
    p.profile = tail_profile::oscillating;
    p.osc_amplitude = 0.4;
    CHECK(classify(m, innovation_spec{p}).verdict == regime::undecided);
}

TEST_CASE("critical threshold shrinks to zero at the boundary") {
    const double theta = 0.5;
    const double boundary = 1.0 / k_const(0.0, theta);  // c at which the rule flips
    double prev_q = 1e9;
    for (double f : {0.2, 0.5, 0.8, 0.95, 0.999}) {
        const auto cls = classify(model_of(drift_sign::down, 0.5, 2.0),
                                  innovation_spec::positive_pareto(theta, f * boundary));
        REQUIRE(cls.verdict == regime::recurrent_critical);
        CHECK(cls.q_star < prev_q);
        prev_q = cls.q_star;
    }
    CHECK(prev_q < 0.05);  // q* -> 0 as c approaches the boundary
}

TEST_CASE("up-drift opposing-tail dispatch") {
    const auto m = model_of(drift_sign::up, 0.5, 0.0);
    const auto all_moments = classify(m, innovation_spec::negative_pareto(0.3, 0.15));
    CHECK(all_moments.verdict == regime::recurrent);
    CHECK(all_moments.moment_kind == moment_bound::all);

    const auto trans = classify(m, innovation_spec::negative_pareto(0.7, 0.2));
    CHECK(trans.verdict == regime::transient);

    const auto critical = classify(m, innovation_spec::negative_pareto(0.5, 0.3));
    CHECK(critical.verdict == regime::recurrent_critical);
    REQUIRE(critical.delta0.has_value());
    CHECK(*critical.delta0 == doctest::Approx(delta0_l(0.3, 0.5).delta0));
    CHECK(critical.q_star == doctest::Approx(*critical.delta0 / 0.5));
}

TEST_CASE("two-sided dispatch") {
    const auto down = model_of(drift_sign::down, 0.5, 2.0);
    const auto rec = classify(down, innovation_spec::two_sided_pareto(0.7, 0.1, 0.4, 0.1));
    CHECK(rec.verdict == regime::recurrent);
    CHECK(rec.q_star == doctest::Approx(1.4));
    CHECK(!rec.sharp);  // bound only

    const auto tra = classify(down, innovation_spec::two_sided_pareto(0.3, 0.1, 0.6, 0.1));
    CHECK(tra.verdict == regime::transient);

    // right lighter than left with theta_right < 1 - gamma: uncovered
    const auto und = classify(down, innovation_spec::two_sided_pareto(0.3, 0.1, 0.2, 0.1));
    CHECK(und.verdict == regime::undecided);

    const auto up = model_of(drift_sign::up, 0.5, 2.0);
    const auto up_tra = classify(up, innovation_spec::two_sided_pareto(0.3, 0.1, 0.8, 0.1));
    CHECK(up_tra.verdict == regime::transient);
    const auto up_rec = classify(up, innovation_spec::two_sided_pareto(0.6, 0.1, 0.3, 0.1));
    CHECK(up_rec.verdict == regime::recurrent);
    CHECK(up_rec.q_star == doctest::Approx(1.0));
    CHECK(!up_rec.sharp);
    const auto up_und = classify(up, innovation_spec::two_sided_pareto(0.3, 0.1, 0.4, 0.1));
    CHECK(up_und.verdict == regime::undecided);
}

TEST_CASE("uncovered drift/tail pairings are undecided, never a crash") {
    CHECK(classify(model_of(drift_sign::down, 0.5, 2.0),
                   innovation_spec::negative_pareto(0.5, 0.1))
              .verdict == regime::undecided);
    CHECK(classify(model_of(drift_sign::up, 0.5, 0.0),
                   innovation_spec::positive_pareto(0.5, 0.1))
              .verdict == regime::undecided);
}

TEST_CASE("target-set requirements") {
    CHECK_THROWS_AS(classify(model_of(drift_sign::down, 0.5, 1.0),
                             innovation_spec::positive_pareto(0.7, 0.2)),
                    std::domain_error);
    CHECK_THROWS_AS(classify(model_of(drift_sign::up, 0.5, 2.0),
                             innovation_spec::negative_pareto(0.3, 0.15)),
                    std::domain_error);
}

TEST_CASE("lattice innovations classify like their continuous counterparts") {
    innovation_params p;
    p.side = support_side::positive_only;
    p.right = side_tail{0.7, 0.2};
    p.lattice = true;
    const auto cls = classify(model_of(drift_sign::down, 0.5, 2.0), innovation_spec{p});
    CHECK(cls.verdict == regime::recurrent);
    CHECK(cls.q_star == doctest::Approx(1.4));
}

TEST_CASE("classification serializes to the documented schema") {
    const auto cls = classify(model_of(drift_sign::down, 0.5, 2.0),
                              innovation_spec::positive_pareto(0.7, 0.2));
    const auto j = nlohmann::json::parse(cls.to_json());
    CHECK(j["regime"] == "recurrent");
    CHECK(j["q_star"].get<double>() == doctest::Approx(1.4));
    CHECK(j["delta0"].is_null());
    CHECK(j["sharp"].get<bool>());
    CHECK(j.contains("boundary_moment_known"));
    CHECK(j.contains("clause"));

    const auto all = classify(model_of(drift_sign::up, 0.5, 0.0),
                              innovation_spec::negative_pareto(0.3, 0.15));
    CHECK(nlohmann::json::parse(all.to_json())["q_star"] == "all");
}

TEST_CASE("classifier verdicts are backed by drift certificates") {
    struct row {
        model_spec m;
        innovation_spec dist;
        regime expected;
    };
    const row rows[] = {
        {model_of(drift_sign::down, 0.5, 2.0), innovation_spec::positive_pareto(0.7, 0.2),
         regime::recurrent},
        {model_of(drift_sign::down, 0.5, 2.0), innovation_spec::positive_pareto(0.3, 0.15),
         regime::transient},
        {model_of(drift_sign::up, 0.5, 0.0), innovation_spec::negative_pareto(0.3, 0.15),
         regime::recurrent},
    };
    const auto grid = geometric_grid(1e2, 1e6, 8);
    for (const auto& r : rows) {
        const auto cls = classify(r.m, r.dist);
        REQUIRE(cls.verdict == r.expected);
        const auto lyap = proof_recipe_lyapunov(r.m, r.dist);
        const auto kind = r.expected == regime::transient
                              ? drift_condition_kind::transience
                              : drift_condition_kind::recurrence;
        const auto report = check_condition(r.m, r.dist, lyap, {kind}, grid);
        CHECK_MESSAGE(report.all_pass, "verdict " << to_string(r.expected));
    }
}
