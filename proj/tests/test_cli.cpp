#include "doctest.h"

#include "sharpfront/cli.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace sharpfront;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("sharpfront_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const fs::path path = dir / "config.json";
    std::ofstream(path) << text;
    return path;
}

int run(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    args.insert(args.begin(), "sharpfront");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("front command reports the cubic speed") {
    const fs::path dir = scratch("front");
    const fs::path cfg = write_config(dir, R"({"nonlinearity": {"kind": "bistable_cubic", "a": 0.25}})");
    std::string out;
    REQUIRE(run({"front", "-c", cfg.string(), "-o", (dir / "out").string()}, &out) == 0);
    const auto summary = nlohmann::json::parse(slurp(dir / "out" / "front" / "summary.json"));
    CHECK(summary["v"].get<double>() == doctest::Approx(0.3535534).epsilon(1e-3));
    CHECK(out.find("v = ") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "front" / "profile.csv"));
}

TEST_CASE("simulate with zero amplitude decays") {
    const fs::path dir = scratch("simulate");
    const fs::path cfg = write_config(dir, R"({
        "nonlinearity": {"kind": "ignition", "theta0": 0.3, "amplitude": 0},
        "grid": {"half_width": 10, "n_cells": 200},
        "sim": {"t_max": 2, "snapshot_every": 100},
        "ic": {"L": 1}
    })");
    REQUIRE(run({"simulate", "-c", cfg.string(), "-o", (dir / "out").string()}) == 0);
    const auto rows = read_csv(dir / "out" / "simulate" / "probes.csv");
    REQUIRE(rows.size() > 10);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][2] <= rows[i - 1][2] + 1e-15);
    CHECK(fs::exists(dir / "out" / "simulate" / "final.csv"));
    CHECK(fs::exists(dir / "out" / "simulate" / "summary.json"));
}

TEST_CASE("threshold command meets the gap tolerance and is deterministic") {
    const fs::path dir = scratch("threshold");
    const fs::path cfg = write_config(dir, R"({
        "nonlinearity": {"kind": "ignition", "theta0": 0.3},
        "grid": {"half_width": 20, "n_cells": 400},
        "threshold": {"L_min": 0.05, "L_max": 10, "t_max": 100}
    })");
    const std::vector<std::string> args{"threshold", "-c", cfg.string(), "--gap-tol", "0.02"};
    REQUIRE(run([&] { auto a = args; a.insert(a.end(), {"-o", (dir / "a").string()}); return a; }()) == 0);
    REQUIRE(run([&] { auto a = args; a.insert(a.end(), {"-o", (dir / "b").string()}); return a; }()) == 0);
    const std::string first = slurp(dir / "a" / "threshold" / "result.json");
    CHECK(first == slurp(dir / "b" / "threshold" / "result.json"));
    const auto result = nlohmann::json::parse(first);
    CHECK(result["sharpness_gap"].get<double>() <= 0.02);
    CHECK(result["L_lo"].get<double>() < result["L_hi"].get<double>());
}

TEST_CASE("exit codes") {
    const fs::path dir = scratch("exit");
    CHECK(run({"front"}) == 1);
    CHECK(run({"front", "-c", (dir / "missing.json").string()}) == 1);
    CHECK(run({"bogus"}) == 1);

    const fs::path bad = write_config(dir, R"({"nonlinearity": {"kind": "ignition", "theta0": 2}})");
    std::string err;
    CHECK(run({"front", "-c", bad.string(), "-o", (dir / "out").string()}, nullptr, &err) == 2);
    CHECK_FALSE(err.empty());

    const fs::path kpp = write_config(dir, R"({"nonlinearity": {"kind": "kpp"}})");
    CHECK(run({"front", "-c", kpp.string(), "-o", (dir / "out").string()}) == 2);

    const fs::path bracket = write_config(dir, R"({
        "nonlinearity": {"kind": "ignition", "theta0": 0.3},
        "grid": {"half_width": 10, "n_cells": 200},
        "threshold": {"L_min": 0.05, "L_max": 0.1, "t_max": 50}
    })");
    CHECK(run({"threshold", "-c", bracket.string(), "-o", (dir / "out").string()}) == 4);
}

TEST_CASE("output root falls back to the environment") {
    const fs::path dir = scratch("env");
    const fs::path cfg = write_config(dir, R"({"nonlinearity": {"kind": "bistable_cubic", "a": 0.3}})");
    ::setenv("SHARPFRONT_OUTPUT_DIR", (dir / "env_out").string().c_str(), 1);
    const int code = run({"bump", "-c", cfg.string()});
    ::unsetenv("SHARPFRONT_OUTPUT_DIR");
    REQUIRE(code == 0);
    CHECK(fs::exists(dir / "env_out" / "bump" / "profile.csv"));
}

TEST_CASE("sweep output does not depend on the job count") {
    const fs::path dir = scratch("sweep");
    const fs::path cfg = write_config(dir, R"({
        "nonlinearity": {"kind": "bistable_cubic", "a": 0.25},
        "sweep": {"command": "front",
                  "cells": [{"nonlinearity.a": 0.1}, {"nonlinearity.a": 0.2},
                            {"nonlinearity.a": 0.3}, {"nonlinearity.a": 0.7}]}
    })");
    REQUIRE(run({"sweep", "-c", cfg.string(), "-o", (dir / "one").string(), "-j", "1"}) == 0);
    REQUIRE(run({"sweep", "-c", cfg.string(), "-o", (dir / "two").string(), "-j", "2"}) == 0);
    const std::string one = slurp(dir / "one" / "sweep" / "sweep.csv");
    CHECK(one == slurp(dir / "two" / "sweep" / "sweep.csv"));
    CHECK(std::count(one.begin(), one.end(), '\n') == 5);
}

TEST_CASE("check command passes on the cubic") {
    const fs::path dir = scratch("check");
    const fs::path cfg = write_config(dir, R"({
        "nonlinearity": {"kind": "bistable_cubic", "a": 0.25},
        "grid": {"half_width": 10, "n_cells": 200},
        "sim": {"t_max": 2}
    })");
    std::string out;
    CHECK(run({"check", "-c", cfg.string(), "-o", (dir / "out").string()}, &out) == 0);
    CHECK(out.find("FAIL") == std::string::npos);
    CHECK(fs::exists(dir / "out" / "check" / "checks.csv"));
}

TEST_CASE("lemma22 command derives the margins for two amplitudes") {
    const fs::path dir = scratch("lemma22");
    const fs::path cfg = write_config(dir, R"({
        "nonlinearity": {"kind": "ignition", "theta0": 0.3, "amplitude": 0.75},
        "grid": {"half_width": 20, "n_cells": 400},
        "lemma22": {"g": {"kind": "ignition", "theta0": 0.3, "amplitude": 0.825}, "t_max": 20}
    })");
    REQUIRE(run({"lemma22", "-c", cfg.string(), "-o", (dir / "out").string()}) == 0);
    const auto summary = nlohmann::json::parse(slurp(dir / "out" / "lemma22" / "summary.json"));
    CHECK(summary["eps1"].get<double>() == doctest::Approx(0.1));
    CHECK(summary["theta1"].get<double>() == doctest::Approx(0.15));
    CHECK(summary["holds"].get<bool>());
    CHECK(summary["max_decrease"].get<double>() <= 1e-6);
}
