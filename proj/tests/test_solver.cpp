#include "doctest.h"

#include "sharpfront/checks.hpp"
#include "sharpfront/error.hpp"
#include "sharpfront/solver.hpp"

#include <cmath>
#include <random>

using namespace sharpfront;

namespace {

double trapezoid_mass(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    s -= 0.5 * (f.values.front() + f.values.back());
    return s * f.grid.spacing();
}

Field gaussian(const Grid& grid, double width) {
    return make_field(grid, [width](double x) { return 0.8 * std::exp(-x * x / (width * width)); });
}

}  // namespace

TEST_CASE("grid is exactly symmetric") {
    const Grid g(40.0, 1600);
    CHECK(g.spacing() == 0.05);
    CHECK(g.x(g.center()) == 0.0);
    for (int j = 0; j <= g.n_cells(); ++j) CHECK(g.x(j) == -g.x(g.n_cells() - j));
    CHECK_THROWS_AS(Grid(40.0, 1601), Error);
    CHECK_THROWS_AS(Grid(-1.0, 10), Error);
}

TEST_CASE("indicator initial data") {
    const Grid g(40.0, 1600);
    const Field zero = indicator_ic(g, 0.0);
    CHECK(zero.sup() == 0.0);
    const Field full = indicator_ic(g, 40.0);
    for (double v : full.values) CHECK(v == 1.0);
    const Field one = indicator_ic(g, 1.0);
    for (int j = 0; j < g.size(); ++j) {
        const double x = std::abs(g.x(j));
        const double v = one.values[static_cast<std::size_t>(j)];
        if (x < 1.0 - 1e-12) CHECK(v == 1.0);
        else if (x > 1.0 + 1e-12) CHECK(v == 0.0);
        else CHECK(v == doctest::Approx(0.5));  // node on the edge: half its cell is covered
    }
    CHECK(one.mass() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(indicator_ic(g, 0.37, 0.5).mass() == doctest::Approx(0.37).epsilon(1e-12));
    CHECK_THROWS_AS(indicator_ic(g, 41.0), Error);
    CHECK_THROWS_AS(indicator_ic(g, 1.0, 0.0), Error);
}

TEST_CASE("rest states are fixed points") {
    const Grid g(10.0, 200);
    const auto f = Nonlinearity::ignition(0.3);
    SimParams p = default_params(g, f, 1.0);
    const Field zero = make_field(g, [](double) { return 0.0; });
    CHECK(step(zero, f, p).sup() == 0.0);
    p.boundary = Boundary::NeumannZero;
    const Field ones = make_field(g, [](double) { return 1.0; });
    const Field next = step(ones, f, p);
    for (double v : next.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Neumann diffusion conserves the discrete mass") {
    const Grid g(10.0, 400);
    const auto heat = Nonlinearity::logistic(0.0);
    SimParams p{1e-3, 2.0, Boundary::NeumannZero, 0};
    Field u = gaussian(g, 1.5);
    const double m0 = trapezoid_mass(u);
    const Stepper s(g, heat, p);
    for (int k = 0; k < 2000; ++k) s.advance(u);
    CHECK(std::abs(trapezoid_mass(u) - m0) < 1e-12);
}

TEST_CASE("pure diffusion: sup decreases strictly") {
    const Grid g(20.0, 400);
    const auto heat = Nonlinearity::logistic(0.0);
    const SimParams p = default_params(g, heat, 5.0);
    const Trajectory t = simulate(indicator_ic(g, 1.0), heat, p, ProbeSet{{0.5}, {}, 40});
    for (std::size_t i = 1; i < t.probes.size(); ++i) CHECK(t.probes.sup[i] < t.probes.sup[i - 1]);
}

TEST_CASE("monotone scheme: comparison, range and symmetry") {
    const Grid g(10.0, 200);
    const auto f = Nonlinearity::bistable(0.25);
    const SimParams p = default_params(g, f, 1.0);
    const Stepper s(g, f, p);
    std::mt19937_64 rng(3);
    for (int pair = 0; pair < 5; ++pair) {
        auto [u, v] = random_ordered_pair(g, rng);
        for (int k = 0; k < 200; ++k) {
            s.advance(u);
            s.advance(v);
            CHECK(order_violation(u, v) <= 1e-12);
            CHECK(range_defect(u) <= 1e-12);
        }
    }
    Field sym = indicator_ic(g, 1.3);
    for (int k = 0; k < 500; ++k) s.advance(sym);
    CHECK(symmetry_defect(sym) <= 1e-12);
}

TEST_CASE("indicator data stays radially non-increasing and the midpoint turns at most once") {
    const Grid g(20.0, 800);
    const auto f = Nonlinearity::ignition(0.3);
    for (double L : {0.5, 1.0, 2.0}) {
        const SimParams p = default_params(g, f, 10.0);
        const Stepper s(g, f, p);
        Field u = indicator_ic(g, L);
        std::vector<double> mid{u.at_center()};
        for (int k = 0; k < 16000; ++k) {
            s.advance(u);
            mid.push_back(u.at_center());
            if (k % 100 == 0) CHECK(radial_monotone_defect(u) <= 1e-10);
        }
        const TurnCount turns = count_turns(mid, 1e-8);
        CHECK(turns.decrease_to_increase <= 1);
        CHECK(turns.increase_to_decrease == 0);
    }
}

TEST_CASE("count_turns") {
    CHECK(count_turns({3, 2, 1, 1, 2, 3}, 1e-8).decrease_to_increase == 1);
    CHECK(count_turns({1, 2, 1}, 1e-8).increase_to_decrease == 1);
    CHECK(count_turns({1, 1 + 1e-9, 1}, 1e-8).increase_to_decrease == 0);
}

TEST_CASE("ignition outcomes for large and tiny L") {
    const Grid g(40.0, 800);
    const auto f = Nonlinearity::ignition(0.3);
    const SimParams p = default_params(g, f, 40.0);
    const Trajectory big = simulate(indicator_ic(g, 10.0), f, p, ProbeSet{{0.5}, {}, 100});
    CHECK(big.probes.midpoint.back() > 0.99);
    const Trajectory tiny = simulate(indicator_ic(g, 0.05), f, p, ProbeSet{{0.5}, {}, 100});
    CHECK(tiny.probes.sup.back() < 0.3);
    CHECK(tiny.probes.sup.back() < tiny.probes.sup.front());
}

TEST_CASE("time step above the monotonicity limit is rejected") {
    const Grid g(10.0, 200);
    const auto f = Nonlinearity::logistic(10.0);
    CHECK_THROWS_AS(Stepper(g, f, SimParams{0.2, 1.0, Boundary::DirichletZero, 0}), Error);
    CHECK_NOTHROW(Stepper(g, f, SimParams{0.1, 1.0, Boundary::DirichletZero, 0}));
}

TEST_CASE("probe series and snapshots") {
    const Grid g(10.0, 200);
    const auto f = Nonlinearity::ignition(0.3);
    SimParams p{0.01, 1.0, Boundary::DirichletZero, 50};
    const Trajectory t = simulate(indicator_ic(g, 2.0), f, p, ProbeSet{{0.5, 0.1}, {}, 10});
    CHECK(t.probes.size() == 11);
    CHECK(t.probes.times.front() == 0.0);
    CHECK(t.probes.times.back() == doctest::Approx(1.0));
    CHECK(t.probes.radius.size() == 2);
    CHECK(t.probes.radius[0].front() == doctest::Approx(2.0));
    CHECK(t.snapshots.size() == 3);
    for (std::size_t i = 1; i < t.probes.size(); ++i) CHECK(t.probes.times[i] > t.probes.times[i - 1]);
}

TEST_CASE("rescaled problem") {
    const auto f = Nonlinearity::ignition(0.3);
    CHECK(rescaled_problem(f, 1.0).spec == f);
    CHECK(rescaled_problem(f, 2.0).spec.amplitude() == 4.0);
    CHECK(rescaled_problem(f, 0.5).spec.amplitude() == 0.25);
    CHECK(rescaled_problem(f, 2.0).original_time(0.5) == 2.0);
    CHECK(rescaled_problem(f, 2.0).original_x(0.5) == 1.0);
    CHECK_THROWS_AS(rescaled_problem(f, 0.0), Error);
}

TEST_CASE("spatial convergence is second order") {
    // Same dt on every grid so the splitting error is common and cancels.
    const auto f = Nonlinearity::bistable(0.25);
    const double dt = 1e-3;
    auto run = [&](int n) {
        const Grid g(8.0, n);
        Field u = gaussian(g, 1.5);
        const Stepper s(g, f, SimParams{dt, 1.0, Boundary::DirichletZero, 0});
        for (int k = 0; k < 1000; ++k) s.advance(u);
        return u;
    };
    const Field ref = run(1280);
    auto error = [&](const Field& u) {
        const int stride = 1280 / u.grid.n_cells();
        double e = 0.0;
        for (int j = 0; j < u.grid.size(); ++j) {
            e = std::max(e, std::abs(u.values[static_cast<std::size_t>(j)] -
                                     ref.values[static_cast<std::size_t>(j * stride)]));
        }
        return e;
    };
    const double e1 = error(run(80));
    const double e2 = error(run(160));
    MESSAGE("errors " << e1 << " " << e2 << " ratio " << e1 / e2);
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
}
