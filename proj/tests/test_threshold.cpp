#include "doctest.h"

#include "sharpfront/error.hpp"
#include "sharpfront/threshold.hpp"

#include <algorithm>

using namespace sharpfront;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::Config;
}

Trajectory criteria_run(const Nonlinearity& f, const Grid& g, double L, double t_max,
                        const OutcomeCriteria& c) {
    const SimParams p = default_params(g, f, t_max);
    return simulate(indicator_ic(g, L), f, p, criteria_probes(c, 80));
}

}  // namespace

TEST_CASE("outcome names and sides") {
    CHECK(outcome_name(Extinction{1.0}) == "extinction");
    CHECK(outcome_name(Undetermined{1.0}) == "undetermined");
    CHECK(outcome_side(Extinction{}) == -1);
    CHECK(outcome_side(NearCritical{}) == 0);
    CHECK(outcome_side(Propagation{}) == 1);
}

TEST_CASE("default criteria per kind") {
    const auto ign = default_criteria(Nonlinearity::ignition(0.3), 200.0);
    CHECK(ign.ext_level == doctest::Approx(0.27));
    CHECK(ign.confirm_level == 0.99);
    CHECK(ign.plateau_span == 50.0);
    const auto kpp = default_criteria(Nonlinearity::logistic(), 200.0);
    CHECK(kpp.ext_level == 0.01);
    const auto bis = default_criteria(Nonlinearity::bistable(0.25), 200.0);
    CHECK(bis.ext_level == doctest::Approx(0.225));
    CHECK(bis.prop_level == doctest::Approx(0.5 * (1.0 + 0.3923748)).epsilon(1e-6));
    CHECK(bis.window == 5.0);
    CHECK(bis.reference(0.0) == doctest::Approx(0.3923748).epsilon(1e-6));
}

TEST_CASE("classification of simple trajectories") {
    const Grid g(20.0, 400);
    const auto f = Nonlinearity::ignition(0.3);
    const auto c = default_criteria(f, 40.0);
    CHECK(std::holds_alternative<Extinction>(classify_outcome(criteria_run(f, g, 0.0, 5.0, c), f, c)));
    CHECK(std::get<Extinction>(classify_outcome(criteria_run(f, g, 0.0, 5.0, c), f, c)).t_ext == 0.0);
    CHECK(std::holds_alternative<Propagation>(classify_outcome(criteria_run(f, g, 10.0, 40.0, c), f, c)));
    CHECK(std::holds_alternative<Extinction>(classify_outcome(criteria_run(f, g, 0.2, 40.0, c), f, c)));

    Trajectory short_run = criteria_run(f, g, 1.0, 0.05, c);
    CHECK(short_run.probes.size() < 10);
    CHECK(code_of([&] { classify_outcome(short_run, f, c); }) == ErrorCode::InsufficientData);
}

TEST_CASE("plateau duration") {
    ProbeSeries s;
    s.times = {0, 1, 2, 3, 4, 5, 6};
    s.distance = {{0.1, 0.04, 0.03, 0.02, 0.2, 0.01, 0.01}};
    CHECK(plateau_duration(s, 0, 0.05) == 2.0);
}

TEST_CASE("ignition threshold bisection on a coarse grid") {
    const Grid g(20.0, 400);
    const auto f = Nonlinearity::ignition(0.3);
    const SimParams p = default_params(g, f, 100.0);
    const auto c = default_criteria(f, 100.0);
    ThresholdOptions o;
    o.gap_tol = 0.02;
    const ThresholdResult r = find_threshold(f, g, p, 0.05, 10.0, c, o);
    CHECK(r.sharpness_gap <= 0.02);
    CHECK(r.L_lo < r.L_hi);
    CHECK(r.L0_estimate > 0.5);
    CHECK(r.L0_estimate < 1.5);
    CHECK_FALSE(r.hair_trigger);
    for (const auto& e : r.trace) {
        if (e.L <= r.L_lo) CHECK(e.side == -1);
        if (e.L >= r.L_hi) CHECK(e.side == 1);
    }

    CHECK(code_of([&] { find_threshold(f, g, p, 5.0, 10.0, c, o); }) == ErrorCode::Bracket);
    CHECK(code_of([&] { find_threshold(f, g, p, 0.05, 0.1, c, o); }) == ErrorCode::Bracket);
    ThresholdOptions tight;
    tight.gap_tol = 1e-3;
    tight.max_iter = 2;
    CHECK(code_of([&] { find_threshold(f, g, p, 0.05, 10.0, c, tight); }) == ErrorCode::Convergence);
}

TEST_CASE("logistic reaction: hair trigger reports L0 = 0") {
    const Grid g(40.0, 400);
    const auto f = Nonlinearity::logistic();
    const SimParams p = default_params(g, f, 100.0);
    const ThresholdResult r = find_threshold(f, g, p, 0.01, 10.0, default_criteria(f, 100.0));
    CHECK(r.hair_trigger);
    CHECK(r.L0_estimate == 0.0);
}

TEST_CASE("continuity bound between two amplitudes") {
    const Grid g(20.0, 400);
    const auto base = Nonlinearity::ignition(0.3);
    const ContinuityReport same = continuity_bound_check(base, 1.0, 1.0, {0.0, 1.0, 2.0}, g);
    CHECK(same.ok);
    for (double d : same.max_difference) CHECK(d == 0.0);
    const ContinuityReport r = continuity_bound_check(base, 1.0, 1.1, {0.0, 0.5, 1.0, 2.0}, g);
    CHECK(r.ok);
    CHECK(r.max_difference.front() == 0.0);
    CHECK(r.bound.front() == 0.0);
    CHECK(r.max_difference.back() > 0.0);
    CHECK(r.max_difference.back() < r.bound.back());
    CHECK_THROWS_AS(continuity_bound_check(base, 1.1, 1.0, {1.0}, g), Error);
}

TEST_CASE("domination check") {
    const auto base = Nonlinearity::ignition(0.3);
    const DominationSetup s = amplitude_pair_setup(base, 1.0, 1.1);
    CHECK(s.theta1 == doctest::Approx(0.15));
    CHECK(s.eps1 == doctest::Approx(0.1));
    CHECK(s.theta_max == doctest::Approx(0.475));
    CHECK(check_domination(s.f, s.g, s.theta1, s.eps1, s.theta_max));
    // eps = 0 slice with g = f holds; a weaker g fails.
    CHECK(domination_margin(base, base, 0.15, 1e-12, 0.475) >= -1e-12);
    CHECK_FALSE(check_domination(base, base.scaled(0.5), 0.15, 0.1, 0.475));
    // Past the monotone range the margin turns negative.
    CHECK_FALSE(check_domination(s.f, s.g, s.theta1, s.eps1, 1.0));
}

TEST_CASE("ratio witness preconditions") {
    const Grid g(10.0, 200);
    const auto base = Nonlinearity::ignition(0.3);
    const DominationSetup s = amplitude_pair_setup(base, 1.0, 1.1);
    const SimParams p = default_params(g, s.g, 1.0);
    const Field T = indicator_ic(g, 1.0, 0.4);
    CHECK(code_of([&] { ratio_witness(s.f, s.g, T, T, s.theta1, s.eps1, s.theta_max, p); }) ==
          ErrorCode::Precondition);
    const Field S = indicator_ic(g, 1.5, 0.45);
    SimParams neumann = p;
    neumann.boundary = Boundary::NeumannZero;
    CHECK(code_of([&] { ratio_witness(s.f, s.g, T, S, s.theta1, s.eps1, s.theta_max, neumann); }) ==
          ErrorCode::Precondition);
    CHECK(code_of([&] { ratio_witness(s.g, s.f, T, S, s.theta1, s.eps1, s.theta_max, p); }) ==
          ErrorCode::Precondition);
    CHECK(code_of([&] { ratio_witness(s.f, s.g, S, T, s.theta1, s.eps1, s.theta_max, p); }) ==
          ErrorCode::Precondition);
}

TEST_CASE("ratio witness on two ignition amplitudes") {
    const Grid g(20.0, 400);
    const auto base = Nonlinearity::ignition(0.3);
    const DominationSetup s = amplitude_pair_setup(base, 1.0, 1.1);
    SimParams p = default_params(g, s.g, 20.0);
    const Field T = indicator_ic(g, 1.0, 0.45);
    const Field S = indicator_ic(g, 1.0, 0.46);
    const RatioWitness w = ratio_witness(s.f, s.g, T, S, s.theta1, s.eps1, s.theta_max, p, 40);
    CHECK(w.started);
    CHECK(w.worst_drop <= 1e-6);
    CHECK(w.terminal > 1.0);
    CHECK(w.holds);
    for (double om : w.omega) CHECK(om <= 1.0 + s.eps1);
}
