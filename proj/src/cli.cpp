#include "sharpfront/cli.hpp"

#include "sharpfront/checks.hpp"
#include "sharpfront/front.hpp"
#include "sharpfront/output.hpp"
#include "sharpfront/stationary.hpp"
#include "sharpfront/threshold.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace sharpfront {

using nlohmann::json;
namespace fs = std::filesystem;

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::NumericalFault:
        case ErrorCode::Resolution:
        case ErrorCode::InsufficientData:
            return 3;
        case ErrorCode::Convergence:
        case ErrorCode::Bracket:
            return 4;
        default:
            return 2;
    }
}

namespace {

int probe_every(double probe_dt, double dt) {
    return std::max(1, static_cast<int>(std::lround(probe_dt / dt)));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_cell(const json& v) {
    if (v.is_number()) return format_double(v.get<double>());
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
        return quoted + "\"";
    }
    return s;
}

// ---- simulate ---------------------------------------------------------------

json simulate_summary(const RunConfig& config, const Trajectory& traj) {
    const Field& f = traj.final_field;
    return json{{"final_time", f.time},
                {"final_midpoint", f.at_center()},
                {"final_sup", f.sup()},
                {"final_mass", f.mass()},
                {"stopped_early", traj.stopped_early},
                {"snapshots", traj.snapshots.size()},
                {"config", to_json(config)}};
}

Trajectory run_simulation(const RunConfig& config) {
    const Nonlinearity spec = build_nonlinearity(config.nonlinearity);
    const Grid grid = build_grid(config.grid);
    const SimParams params = build_params(config, spec, config.sim.t_max);
    ProbeSet probes;
    probes.levels = config.sim.levels;
    probes.probe_every = probe_every(config.sim.probe_dt, params.dt);
    return simulate(indicator_ic(grid, config.ic.L, config.ic.alpha), spec, params, probes);
}

void cmd_simulate(const RunConfig& config, const fs::path& dir, std::ostream& log) {
    const Trajectory traj = run_simulation(config);
    for (const auto& snap : traj.snapshots) write_file(dir / snapshot_name(snap.time), field_table(snap).str());
    write_file(dir / "final.csv", field_table(traj.final_field).str());
    write_file(dir / "probes.csv", probes_table(traj.probes).str());
    write_file(dir / "summary.json", dump(simulate_summary(config, traj)));
    log << "simulate: t = " << format_double(traj.final_field.time)
        << ", T(t,0) = " << format_double(traj.final_field.at_center())
        << ", sup T = " << format_double(traj.final_field.sup()) << "\n";
}

// ---- threshold --------------------------------------------------------------

ThresholdResult run_threshold(const RunConfig& config) {
    const Nonlinearity spec = build_nonlinearity(config.nonlinearity);
    const Grid grid = build_grid(config.grid);
    const SimParams params = build_params(config, spec, config.threshold.t_max);
    const OutcomeCriteria criteria = default_criteria(spec, config.threshold.t_max);
    ThresholdOptions options;
    options.gap_tol = config.threshold.gap_tol;
    options.max_iter = config.threshold.max_iter;
    options.probe_dt = config.sim.probe_dt;
    return find_threshold(spec, grid, params, config.threshold.L_min, config.threshold.L_max, criteria,
                          options);
}

void cmd_threshold(const RunConfig& config, const fs::path& dir, std::ostream& log) {
    const ThresholdResult result = run_threshold(config);
    json trace = json::array();
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        const auto& e = result.trace[i];
        char name[32];
        std::snprintf(name, sizeof(name), "probes_%03zu.csv", i);
        write_file(dir / name, probes_table(e.probes).str());
        trace.push_back(json{{"L", e.L},
                             {"outcome", outcome_json(e.outcome)},
                             {"side", e.side},
                             {"extended_horizon", e.extended},
                             {"assigned_by_trend", e.assigned_by_trend},
                             {"horizon", e.horizon},
                             {"probes", name}});
    }
    const json out{{"L_lo", result.L_lo},
                   {"L_hi", result.L_hi},
                   {"L0_estimate", result.L0_estimate},
                   {"sharpness_gap", result.sharpness_gap},
                   {"iterations", result.iterations},
                   {"hair_trigger", result.hair_trigger},
                   {"trace", trace},
                   {"config", to_json(config)}};
    write_file(dir / "result.json", dump(out));
    log << "threshold: L0 in [" << format_double(result.L_lo) << ", " << format_double(result.L_hi)
        << "], estimate " << format_double(result.L0_estimate) << " after " << result.iterations
        << " iterations" << (result.hair_trigger ? " (hair trigger)" : "") << "\n";
}

// ---- bump -------------------------------------------------------------------

void cmd_bump(const RunConfig& config, const fs::path& dir, std::ostream& log) {
    const Nonlinearity spec = build_nonlinearity(config.nonlinearity);
    BumpOptions options;
    options.u_min = config.bump.u_min;
    const StationaryProfile profile = solve_bump(spec, options);
    write_file(dir / "profile.csv", CsvTable{{"x", "U", "Uprime"}, {profile.xs, profile.us, profile.uprimes}}.str());
    const BellShapeReport bell = bell_shape_check(profile, spec, config.bump.spacing);
    const json out{{"theta2", profile.theta2},
                   {"residual", residual(profile, spec, config.bump.spacing)},
                   {"energy_defect", energy_defect(profile, spec)},
                   {"tail_rate", profile.tail_rate},
                   {"inflection_x", bell.inflection_x},
                   {"inflection_u", bell.inflection_u},
                   {"bell_shaped", bell.ok},
                   {"violations", bell.violations},
                   {"config", to_json(config)}};
    write_file(dir / "summary.json", dump(out));
    log << "bump: theta2 = " << format_double(profile.theta2) << ", " << profile.size() << " points\n";
}

// ---- front ------------------------------------------------------------------

FrontSolution run_front(const RunConfig& config) {
    const Nonlinearity spec = build_nonlinearity(config.nonlinearity);
    FrontOptions options;
    options.step = config.front.step;
    options.table_spacing = config.front.table_spacing;
    return front_speed(spec, config.front.tol, options);
}

void cmd_front(const RunConfig& config, const fs::path& dir, std::ostream& log) {
    const Nonlinearity spec = build_nonlinearity(config.nonlinearity);
    const FrontSolution front = run_front(config);
    write_file(dir / "profile.csv", CsvTable{{"xi", "phi"}, {front.xis, front.phis}}.str());
    const json out{{"v", front.speed},
                   {"bracket_width", front.bracket_width},
                   {"iterations", front.iterations},
                   {"shoot_residual", front.shoot_residual},
                   {"profile_residual", profile_residual(front, spec)},
                   {"config", to_json(config)}};
    write_file(dir / "summary.json", dump(out));
    log << "v = " << format_double(front.speed) << "\n";
}

// ---- lemma22 ----------------------------------------------------------------

void cmd_lemma22(const RunConfig& config, const fs::path& dir, std::ostream& log) {
    const Nonlinearity f = build_nonlinearity(config.nonlinearity);
    const Nonlinearity g = build_nonlinearity(config.lemma22.g);
    const Lemma22Config& c = config.lemma22;
    double theta1 = 0.0;
    double eps1 = 0.0;
    double theta_max = 0.0;
    if (c.theta1 && c.eps1 && c.theta_max) {
        theta1 = *c.theta1;
        eps1 = *c.eps1;
        theta_max = *c.theta_max;
    } else {
        // Two amplitudes of one ignition profile: derive the floor and margin.
        NonlinearityConfig f_unit = config.nonlinearity;
        NonlinearityConfig g_unit = c.g;
        f_unit.amplitude = g_unit.amplitude = 1.0;
        if (f_unit != g_unit || config.nonlinearity.kind != "ignition") {
            throw Error(ErrorCode::Config,
                        "lemma22.theta1, eps1 and theta_max are required unless f and g are two "
                        "amplitudes of the same ignition profile");
        }
        const DominationSetup setup =
            amplitude_pair_setup(build_nonlinearity(f_unit), f.amplitude(), g.amplitude());
        theta1 = c.theta1.value_or(setup.theta1);
        eps1 = c.eps1.value_or(setup.eps1);
        theta_max = c.theta_max.value_or(setup.theta_max);
    }

    const Grid grid = build_grid(config.grid);
    SimParams params = build_params(config, f, c.t_max);
    if (!config.sim.dt) params.dt = std::min(default_dt(grid, f), default_dt(grid, g));
    Field T = indicator_ic(grid, c.ic_T.L, c.ic_T.alpha);
    Field S = indicator_ic(grid, c.ic_S.L, c.ic_S.alpha);
    {
        // Co-evolve for the warmup time, then on until sup T <= theta_max.
        const Stepper step_T(grid, f, params);
        const Stepper step_S(grid, g, params);
        const long n = std::lround(c.warmup / params.dt);
        const long limit = std::lround(c.t_max / params.dt);
        for (long k = 1; k <= n || (T.sup() > theta_max && k <= limit); ++k) {
            step_T.advance(T);
            step_S.advance(S);
            T.time = S.time = static_cast<double>(k) * params.dt;
        }
        log << "witness starts at t = " << format_double(T.time) << "\n";
    }
    const RatioWitness w = ratio_witness(f, g, T, S, theta1, eps1, theta_max, params,
                                         probe_every(config.sim.probe_dt, params.dt));
    write_file(dir / "omega.csv", CsvTable{{"t", "omega"}, {w.times, w.omega}}.str());
    const json out{{"theta1", theta1},
                   {"eps1", eps1},
                   {"theta_max", theta_max},
                   {"domination_margin", domination_margin(f, g, theta1, eps1, theta_max)},
                   {"started", w.started},
                   {"t_start", w.t_start},
                   {"omega_start", w.started ? w.omega[w.start_index] : w.terminal},
                   {"worst_drop", w.worst_drop},
                   {"max_decrease", w.max_decrease},
                   {"terminal", w.terminal},
                   {"holds", w.holds},
                   {"config", to_json(config)}};
    write_file(dir / "summary.json", dump(out));
    log << "lemma22: terminal omega = " << format_double(w.terminal) << (w.holds ? " (holds)" : " (FAILS)")
        << "\n";
    if (!w.holds) throw Error(ErrorCode::NumericalFault, "ratio witness did not hold");
}

// ---- check ------------------------------------------------------------------

int cmd_check(const RunConfig& config, const fs::path& dir, std::ostream& log) {
    const Nonlinearity spec = build_nonlinearity(config.nonlinearity);
    const Grid grid = build_grid(config.grid);
    const SimParams params = build_params(config, spec, config.sim.t_max);
    const auto results = run_invariant_suite(spec, grid, params);
    std::string csv = "name,passed,detail\n";
    bool all = true;
    for (const auto& r : results) {
        csv += r.name + "," + (r.passed ? "true" : "false") + "," + csv_cell(json(r.detail)) + "\n";
        log << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        all = all && r.passed;
    }
    write_file(dir / "checks.csv", csv);
    return all ? 0 : 3;
}

// ---- sweep ------------------------------------------------------------------

struct SweepRow {
    std::string status = "ok";
    std::vector<double> values;
};

std::vector<std::string> sweep_columns(const std::string& command) {
    if (command == "threshold") return {"L_lo", "L_hi", "L0_estimate", "sharpness_gap", "iterations", "hair_trigger"};
    if (command == "front") return {"v", "shoot_residual"};
    if (command == "bump") return {"theta2", "residual", "energy_defect", "x_max"};
    return {"t", "T0", "supT"};
}

SweepRow sweep_cell(const RunConfig& base, const json& overrides) {
    SweepRow row;
    try {
        json doc = to_json(base);
        doc.erase("sweep");
        for (const auto& item : overrides.items()) {
            apply_override(doc, item.key() + "=" + item.value().dump());
        }
        const RunConfig config = config_from_json(doc);
        const std::string& command = base.sweep.command;
        if (command == "threshold") {
            const ThresholdResult r = run_threshold(config);
            row.values = {r.L_lo, r.L_hi, r.L0_estimate, r.sharpness_gap, static_cast<double>(r.iterations),
                          r.hair_trigger ? 1.0 : 0.0};
        } else if (command == "front") {
            const FrontSolution f = run_front(config);
            row.values = {f.speed, f.shoot_residual};
        } else if (command == "bump") {
            const Nonlinearity spec = build_nonlinearity(config.nonlinearity);
            BumpOptions options;
            options.u_min = config.bump.u_min;
            const StationaryProfile p = solve_bump(spec, options);
            row.values = {p.theta2, residual(p, spec, config.bump.spacing), energy_defect(p, spec), p.xs.back()};
        } else {
            const Trajectory t = run_simulation(config);
            row.values = {t.final_field.time, t.final_field.at_center(), t.final_field.sup()};
        }
    } catch (const Error& e) {
        row.status = std::string(to_string(e.code()));
    }
    return row;
}

void cmd_sweep(const RunConfig& config, const fs::path& dir, std::ostream& log, int jobs) {
    const auto& cells = config.sweep.cells;
    if (cells.empty()) throw Error(ErrorCode::Config, "sweep.cells must list at least one cell");
    std::vector<SweepRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = sweep_cell(config, cells[i]);
    };
    const int n_threads = std::clamp(jobs, 1, static_cast<int>(cells.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<std::string> keys;
    for (const auto& cell : cells) {
        for (const auto& item : cell.items()) {
            if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) keys.push_back(item.key());
        }
    }
    const auto columns = sweep_columns(config.sweep.command);
    std::string csv = "cell";
    for (const auto& k : keys) csv += "," + csv_cell(json(k));
    csv += ",status";
    for (const auto& c : columns) csv += "," + c;
    csv += "\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        csv += std::to_string(i);
        for (const auto& k : keys) csv += "," + (cells[i].contains(k) ? csv_cell(cells[i].at(k)) : std::string());
        csv += "," + rows[i].status;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            csv += "," + (c < rows[i].values.size() ? format_double(rows[i].values[c]) : std::string());
        }
        csv += "\n";
    }
    write_file(dir / "sweep.csv", csv);
    log << "sweep: " << cells.size() << " cells\n";
}

}  // namespace

int run_command(const std::string& command, const RunConfig& config, const fs::path& output_root,
                std::ostream& log, int jobs) {
    const fs::path dir = output_root / command;
    if (command == "simulate") cmd_simulate(config, dir, log);
    else if (command == "threshold") cmd_threshold(config, dir, log);
    else if (command == "bump") cmd_bump(config, dir, log);
    else if (command == "front") cmd_front(config, dir, log);
    else if (command == "lemma22") cmd_lemma22(config, dir, log);
    else if (command == "sweep") cmd_sweep(config, dir, log, jobs);
    else if (command == "check") return cmd_check(config, dir, log);
    else throw Error(ErrorCode::Config, "unknown command '" + command + "'");
    return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reaction-diffusion threshold laboratory"};
    app.require_subcommand(1);

    struct Options {
        std::string config;
        std::vector<std::string> sets;
        std::string output_dir;
        int jobs = 1;
        std::optional<double> L_min, L_max, gap_tol, t_max;
    } opt;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"simulate", "time-integrate indicator data and write snapshots and probes"},
        {"threshold", "bisect on the indicator half-width for the critical L0"},
        {"bump", "tabulate the stationary bump U through theta2"},
        {"front", "compute the travelling-front speed and profile"},
        {"lemma22", "co-evolve two reactions and record the ratio witness omega(t)"},
        {"sweep", "run a command over a grid of config overrides"},
        {"check", "run the invariant suite on the configured nonlinearity"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("-c,--config", opt.config, "JSON config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--set", opt.sets, "override a config value, e.g. --set grid.n_cells=800");
        sub->add_option("-o,--output-dir", opt.output_dir,
                        "output root (default: $SHARPFRONT_OUTPUT_DIR or ./output)");
        subs[name] = sub;
    }
    CLI::App* thr = subs["threshold"];
    thr->add_option("--L-min", opt.L_min, "lower bracket end");
    thr->add_option("--L-max", opt.L_max, "upper bracket end");
    thr->add_option("--gap-tol", opt.gap_tol, "target bracket width");
    thr->add_option("--t-max", opt.t_max, "horizon per run");
    subs["sweep"]->add_option("-j,--jobs", opt.jobs, "parallel cells")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    std::string command;
    for (const auto& [name, sub] : subs) {
        if (sub->parsed()) command = name;
    }

    try {
        std::ifstream in(opt.config, std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        json doc = parse_json(text.str());
        if (opt.L_min) apply_override(doc, "threshold.L_min=" + format_double(*opt.L_min));
        if (opt.L_max) apply_override(doc, "threshold.L_max=" + format_double(*opt.L_max));
        if (opt.gap_tol) apply_override(doc, "threshold.gap_tol=" + format_double(*opt.gap_tol));
        if (opt.t_max) apply_override(doc, "threshold.t_max=" + format_double(*opt.t_max));
        for (const auto& s : opt.sets) apply_override(doc, s);
        const RunConfig config = config_from_json(doc);

        fs::path root = opt.output_dir;
        if (root.empty()) {
            const char* env = std::getenv("SHARPFRONT_OUTPUT_DIR");
            root = env && *env ? fs::path(env) : fs::path("output");
        }
        return run_command(command, config, root, out, opt.jobs);
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return exit_code(e.code());
    }
}

}  // namespace sharpfront
