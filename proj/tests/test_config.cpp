#include "doctest.h"

#include "sharpfront/config.hpp"
#include "sharpfront/error.hpp"

#include <string>

using namespace sharpfront;

namespace {

std::string config_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Config);
        return e.what();
    }
    FAIL("expected a config error");
    return {};
}

}  // namespace

TEST_CASE("minimal config takes defaults") {
    const RunConfig c = parse_config(R"({"nonlinearity": {"kind": "ignition", "theta0": 0.2}})");
    CHECK(c.nonlinearity.theta0 == 0.2);
    CHECK(c.grid.half_width == 40.0);
    CHECK(c.grid.n_cells == 1600);
    CHECK_FALSE(c.sim.dt.has_value());
    CHECK(c.sim.boundary == "dirichlet");
    CHECK(c.threshold.gap_tol == 1e-3);
}

TEST_CASE("emit and parse round-trip") {
    RunConfig c = parse_config(R"({
        "nonlinearity": {"kind": "tabulated", "declared": "bistable",
                         "table": [[0, 0], [0.3, -0.05], [0.6, 0.1], [1, 0]]},
        "grid": {"half_width": 12.5, "n_cells": 500},
        "sim": {"dt": 0.001, "boundary": "neumann", "levels": [0.25, 0.5]},
        "lemma22": {"theta1": 0.1, "ic_S": {"L": 2, "alpha": 0.5}},
        "sweep": {"command": "front", "cells": [{"nonlinearity.a": 0.1}, {"nonlinearity.a": 0.2}]}
    })");
    CHECK(parse_config(emit_config(c)) == c);
    CHECK(c.nonlinearity.table.size() == 4);
    CHECK(c.sweep.cells.size() == 2);
    CHECK(c.lemma22.theta1 == 0.1);
    CHECK_FALSE(c.lemma22.eps1.has_value());
    const RunConfig d = parse_config(R"({"nonlinearity": {"kind": "kpp"}})");
    CHECK(parse_config(emit_config(d)) == d);
}

TEST_CASE("syntax errors carry line and column") {
    const std::string what = config_error("{\n  \"nonlinearity\": {\n    \"kind\": ignition\n  }\n}");
    CHECK(what.find("line 3") != std::string::npos);
    CHECK(what.find("column") != std::string::npos);
}

TEST_CASE("field errors name the field") {
    CHECK(config_error(R"({"grid": {}})").find("nonlinearity") != std::string::npos);
    CHECK(config_error(R"({"nonlinearity": {"kind": "ignition", "theta0": "high"}})")
              .find("nonlinearity.theta0") != std::string::npos);
    CHECK(config_error(R"({"nonlinearity": {"kind": "ignition"}, "grid": {"n_cells": 10.5}})")
              .find("grid.n_cells") != std::string::npos);
    CHECK(config_error(R"({"nonlinearity": {"kind": "ignition", "theta00": 0.2}})")
              .find("theta00") != std::string::npos);
    CHECK(config_error(R"({"nonlinearity": {"kind": "ignition"}, "extra": 1})").find("extra") !=
          std::string::npos);
    CHECK(config_error(R"({"nonlinearity": {"kind": "quartic"}})").find("nonlinearity.kind") !=
          std::string::npos);
    CHECK(config_error(R"({"nonlinearity": {"kind": "ignition"}, "sim": {"boundary": "robin"}})")
              .find("sim.boundary") != std::string::npos);
}

TEST_CASE("dotted overrides") {
    nlohmann::json doc = parse_json(R"({"nonlinearity": {"kind": "ignition"}})");
    apply_override(doc, "nonlinearity.theta0=0.4");
    apply_override(doc, "grid.n_cells=200");
    apply_override(doc, "sim.boundary=neumann");
    const RunConfig c = config_from_json(doc);
    CHECK(c.nonlinearity.theta0 == 0.4);
    CHECK(c.grid.n_cells == 200);
    CHECK(c.sim.boundary == "neumann");
    CHECK_THROWS_AS(apply_override(doc, "no_equals_sign"), Error);
}

TEST_CASE("building runtime objects") {
    NonlinearityConfig n;
    n.kind = "bistable_cubic";
    n.a = 0.3;
    CHECK(build_nonlinearity(n) == Nonlinearity::bistable(0.3));
    n.kind = "kpp";
    n.form = "power";
    n.p = 3.0;
    n.amplitude = 2.0;
    CHECK(build_nonlinearity(n) == Nonlinearity::power(3.0, 2.0));
    n.kind = "arrhenius";
    CHECK(std::holds_alternative<Arrhenius>(build_nonlinearity(n).kind()));

    RunConfig c = parse_config(R"({"nonlinearity": {"kind": "ignition"}, "grid": {"half_width": 10, "n_cells": 100}})");
    const Grid g = build_grid(c.grid);
    CHECK(g.spacing() == doctest::Approx(0.2));
    const Nonlinearity f = build_nonlinearity(c.nonlinearity);
    const SimParams p = build_params(c, f, 5.0);
    CHECK(p.dt == doctest::Approx(default_dt(g, f)));
    CHECK(p.t_max == 5.0);
    CHECK(parse_boundary("neumann") == Boundary::NeumannZero);
    CHECK_THROWS_AS(parse_boundary("periodic"), Error);
}
