#include "doctest.h"
#include "oracles.hpp"

#include "sharpfront/error.hpp"
#include "sharpfront/front.hpp"

using namespace sharpfront;

TEST_CASE("front speed matches the tanh oracle") {
    for (double a : {0.1, 0.25, 0.4}) {
        const FrontSolution front = front_speed(Nonlinearity::bistable(a), 1e-10);
        CHECK(std::abs(front.speed - oracle::cubic_speed(a)) < 1e-6);
        CHECK(front.bracket_width <= 1e-10);
    }
    CHECK(std::abs(front_speed(Nonlinearity::bistable(0.5), 1e-10).speed) < 1e-6);
    CHECK(front_speed(Nonlinearity::bistable(0.6), 1e-10).speed < 0.0);
}

TEST_CASE("front profile matches the closed form and is decreasing") {
    const auto f = Nonlinearity::bistable(0.25);
    const FrontSolution front = front_speed(f, 1e-12);
    REQUIRE(front.xis.size() > 100);
    double worst = 0.0;
    for (std::size_t i = 0; i < front.xis.size(); ++i) {
        worst = std::max(worst, std::abs(front.phis[i] - oracle::cubic_front(front.xis[i])));
        if (i > 0) CHECK(front.phis[i] < front.phis[i - 1]);
    }
    CHECK(worst < 1e-5);
    CHECK(front.shoot_residual < 1e-6);
    CHECK(profile_residual(front, f) < 1e-3);
}

TEST_CASE("shots bracket the speed") {
    const auto f = Nonlinearity::bistable(0.25);
    CHECK(shoot(f, -1.0) == ShotOutcome::Undershoot);
    CHECK(shoot(f, 1.0) == ShotOutcome::Overshoot);
}

TEST_CASE("front requires a bistable nonlinearity") {
    try {
        front_speed(Nonlinearity::logistic(), 1e-6);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsupportedKind);
    }
    CHECK_THROWS_AS(front_speed(Nonlinearity::bistable(0.25), 0.0), Error);
}
