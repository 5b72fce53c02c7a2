#include "sharpfront/threshold.hpp"

#include "sharpfront/error.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

namespace sharpfront {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t half_level_index(const ProbeSeries& probes) {
    for (std::size_t k = 0; k < probes.levels.size(); ++k) {
        if (probes.levels[k] == 0.5) return k;
    }
    throw Error(ErrorCode::Precondition, "probe series lacks the level-1/2 radius");
}

int probe_stride(double probe_dt, double dt) {
    return std::max(1, static_cast<int>(std::lround(probe_dt / dt)));
}

}  // namespace

std::string outcome_name(const Outcome& outcome) {
    return std::visit(Overloaded{
                          [](const Extinction&) { return std::string("extinction"); },
                          [](const Propagation&) { return std::string("propagation"); },
                          [](const NearCritical&) { return std::string("near_critical"); },
                          [](const Undetermined&) { return std::string("undetermined"); },
                      },
                      outcome);
}

int outcome_side(const Outcome& outcome) {
    if (std::holds_alternative<Extinction>(outcome)) return -1;
    if (std::holds_alternative<Propagation>(outcome)) return 1;
    return 0;
}

OutcomeCriteria default_criteria(const Nonlinearity& spec, double t_max,
                                 const StationaryProfile* bump) {
    OutcomeCriteria c;
    c.plateau_span = t_max / 4.0;
    const SignPattern pattern = spec.check_sign_pattern().pattern;
    const double theta0 = spec.ignition_temperature();

    if (pattern == SignPattern::Bistable) {
        const StationaryProfile profile = bump ? *bump : solve_bump(spec);
        c.prop_level = 0.5 * (1.0 + profile.theta2);
        c.confirm_level = 0.99;
        c.ext_level = 0.9 * theta0;
        c.plateau_level = profile.theta2;
        c.window = 5.0;
        c.reference = [profile](double x) { return profile.value(x); };
        c.midpoint_band = false;
    } else if (pattern == SignPattern::IgnitionPlateau && theta0 > 0.0) {
        c.prop_level = theta0 < 0.9 ? 0.99 : 0.5 * (1.0 + theta0);
        c.confirm_level = c.prop_level;
        c.ext_level = 0.9 * theta0;
        c.plateau_level = theta0;
        c.window = 1.0;
        c.reference = [theta0](double) { return theta0; };
        c.midpoint_band = true;
    } else {
        // theta0 = 0: sup-norm criteria over the whole line.
        c.prop_level = 0.99;
        c.confirm_level = 0.99;
        c.ext_level = 0.01;
        c.plateau_level = 0.0;
        c.window = std::numeric_limits<double>::infinity();
        c.reference = [](double) { return 0.0; };
        c.midpoint_band = false;
    }
    return c;
}

ProbeSet criteria_probes(const OutcomeCriteria& criteria, int probe_every) {
    ProbeSet set;
    set.levels = {0.5};
    set.references.push_back(ReferenceProbe{"critical", criteria.reference, criteria.window});
    set.probe_every = probe_every;
    return set;
}

std::optional<Outcome> OutcomeTracker::update(const ProbeSeries& probes, std::size_t i) {
    const double t = probes.times[i];
    const double mid = probes.midpoint[i];
    const double sup = probes.sup[i];
    const double r = probes.radius[half_level_index(probes)][i];
    const double dist = probes.distance.empty() ? std::numeric_limits<double>::infinity()
                                                : probes.distance[0][i];
    if (!started_) {
        started_ = true;
        radius_min_ = r;
        min_distance_ = dist;
    }
    radius_min_ = std::min(radius_min_, r);
    min_distance_ = std::min(min_distance_, dist);

    const bool in_band = criteria_.midpoint_band
                             ? std::abs(mid - criteria_.plateau_level) <= criteria_.band_width
                             : dist <= criteria_.band_width;
    if (in_band) {
        if (!in_band_) band_start_ = t;
        longest_span_ = std::max(longest_span_, t - band_start_);
    }
    in_band_ = in_band;

    if (mid >= std::max(criteria_.prop_level, criteria_.confirm_level) &&
        r - radius_min_ >= criteria_.growth_margin) {
        return Propagation{t};
    }
    if (sup <= criteria_.ext_level) return Extinction{t};
    return std::nullopt;
}

Outcome OutcomeTracker::finish(double horizon) const {
    if (longest_span_ >= criteria_.plateau_span) {
        return NearCritical{criteria_.plateau_level, longest_span_, min_distance_};
    }
    return Undetermined{horizon};
}

Outcome classify_outcome(const Trajectory& trajectory, const Nonlinearity& spec,
                         const OutcomeCriteria& criteria) {
    (void)spec;
    const ProbeSeries& probes = trajectory.probes;
    if (probes.size() < 10) {
        throw Error(ErrorCode::InsufficientData, "outcome classification needs at least 10 probe samples");
    }
    OutcomeTracker tracker(criteria);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (auto decided = tracker.update(probes, i)) return *decided;
    }
    return tracker.finish(probes.times.back());
}

double plateau_duration(const ProbeSeries& probes, std::size_t k, double band) {
    if (k >= probes.distance.size()) {
        throw Error(ErrorCode::Precondition, "no reference distance series with that index");
    }
    const auto& d = probes.distance[k];
    double best = 0.0;
    bool inside = false;
    double start = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] <= band) {
            if (!inside) start = probes.times[i];
            inside = true;
            best = std::max(best, probes.times[i] - start);
        } else {
            inside = false;
        }
    }
    return best;
}

namespace {

IndicatorRun run_once(const Nonlinearity& spec, const Grid& grid, const SimParams& params, double L,
                      const OutcomeCriteria& criteria, double probe_dt) {
    const Field ic = indicator_ic(grid, L);
    const ProbeSet probes = criteria_probes(criteria, probe_stride(probe_dt, params.dt));
    OutcomeTracker tracker(criteria);
    std::optional<Outcome> decided;
    auto stop = [&](const ProbeSeries& series, const Field&) {
        decided = tracker.update(series, series.size() - 1);
        return decided.has_value();
    };
    SimParams run_params = params;
    run_params.snapshot_every = 0;
    Trajectory traj = simulate(ic, spec, run_params, probes, stop);

    IndicatorRun run{decided ? *decided : tracker.finish(params.t_max), std::move(traj.probes), grid,
                     params.t_max, false, 0.0};
    const auto& mid = run.probes.midpoint;
    const auto& times = run.probes.times;
    const double t_quarter = times.back() - 0.25 * (times.back() - times.front());
    const auto it = std::lower_bound(times.begin(), times.end(), t_quarter);
    run.trend = mid.back() - mid[static_cast<std::size_t>(it - times.begin())];

    const auto& u = traj.final_field.values;
    if (params.boundary == Boundary::DirichletZero && (u[1] > 1e-6 || u[u.size() - 2] > 1e-6)) {
        run.widened = true;  // signals the caller; grid unchanged here
    }
    return run;
}

}  // namespace

IndicatorRun run_indicator(const Nonlinearity& spec, const Grid& grid, const SimParams& params,
                           double L, const OutcomeCriteria& criteria, double probe_dt) {
    IndicatorRun run = run_once(spec, grid, params, L, criteria, probe_dt);
    if (!run.widened) return run;
    std::cerr << "warning: solution reached the far field at X = " << grid.half_width()
              << "; re-running with X = " << 2.0 * grid.half_width() << "\n";
    const Grid wide(2.0 * grid.half_width(), 2 * grid.n_cells());
    IndicatorRun rerun = run_once(spec, wide, params, L, criteria, probe_dt);
    rerun.widened = true;
    return rerun;
}

namespace {

TraceEntry classify_half_width(const Nonlinearity& spec, const Grid& grid, const SimParams& params,
                               double L, const OutcomeCriteria& criteria, double probe_dt) {
    IndicatorRun run = run_indicator(spec, grid, params, L, criteria, probe_dt);
    TraceEntry entry{L, run.outcome, outcome_side(run.outcome), false, false, run.horizon, {}};
    if (entry.side == 0) {
        SimParams longer = params;
        longer.t_max = 2.0 * params.t_max;
        OutcomeCriteria longer_criteria = criteria;
        longer_criteria.plateau_span = 2.0 * criteria.plateau_span;
        run = run_indicator(spec, grid, longer, L, longer_criteria, probe_dt);
        entry.outcome = run.outcome;
        entry.side = outcome_side(run.outcome);
        entry.extended = true;
        entry.horizon = run.horizon;
        if (entry.side == 0) {
            entry.side = run.trend > 0.0 ? 1 : -1;
            entry.assigned_by_trend = true;
        }
    }
    entry.probes = std::move(run.probes);
    return entry;
}

}  // namespace

ThresholdResult find_threshold(const Nonlinearity& spec, const Grid& grid, const SimParams& params,
                               double L_min, double L_max, const OutcomeCriteria& criteria,
                               const ThresholdOptions& options) {
    if (!(L_min >= 0.0) || !(L_max > L_min) || L_max > grid.half_width()) {
        throw Error(ErrorCode::Bracket, "threshold bracket must satisfy 0 <= L_min < L_max <= X");
    }
    if (!(options.gap_tol > 0.0)) throw Error(ErrorCode::Domain, "gap_tol must be positive");

    ThresholdResult result;
    const bool zero_ignition = spec.ignition_temperature() == 0.0;
    auto finish_hair_trigger = [&](double L_hi) {
        result.hair_trigger = true;
        result.L_lo = 0.0;
        result.L_hi = L_hi;
        result.L0_estimate = 0.0;
        result.sharpness_gap = L_hi;
    };

    TraceEntry low = classify_half_width(spec, grid, params, L_min, criteria, options.probe_dt);
    const Outcome low_outcome = low.outcome;
    result.trace.push_back(std::move(low));
    if (!std::holds_alternative<Extinction>(low_outcome)) {
        if (zero_ignition && std::holds_alternative<Propagation>(low_outcome)) {
            finish_hair_trigger(L_min);
            return result;
        }
        throw Error(ErrorCode::Bracket, "lower bracket end L_min = " + std::to_string(L_min) +
                                            " is not classified extinction (" +
                                            outcome_name(low_outcome) + ")");
    }
    TraceEntry high = classify_half_width(spec, grid, params, L_max, criteria, options.probe_dt);
    const Outcome high_outcome = high.outcome;
    result.trace.push_back(std::move(high));
    if (!std::holds_alternative<Propagation>(high_outcome)) {
        throw Error(ErrorCode::Bracket, "upper bracket end L_max = " + std::to_string(L_max) +
                                            " is not classified propagation (" +
                                            outcome_name(high_outcome) + ")");
    }

    double lo = L_min;
    double hi = L_max;
    while (hi - lo > options.gap_tol) {
        if (result.iterations >= options.max_iter) {
            throw Error(ErrorCode::Convergence, "threshold bisection exceeded max_iter = " +
                                                    std::to_string(options.max_iter));
        }
        ++result.iterations;
        const double mid = 0.5 * (lo + hi);
        TraceEntry entry = classify_half_width(spec, grid, params, mid, criteria, options.probe_dt);
        (entry.side > 0 ? hi : lo) = mid;
        result.trace.push_back(std::move(entry));
    }

    // Every traced L below L_lo must be extinction-side, every L above L_hi propagation-side.
    std::vector<std::pair<double, int>> sides;
    for (const auto& e : result.trace) sides.emplace_back(e.L, e.side);
    std::sort(sides.begin(), sides.end());
    for (std::size_t i = 1; i < sides.size(); ++i) {
        if (sides[i].second < sides[i - 1].second) {
            throw Error(ErrorCode::NumericalFault, "outcome trace is not monotone in L");
        }
    }

    if (zero_ignition && lo == 0.0) {
        finish_hair_trigger(hi);
        return result;
    }
    result.L_lo = lo;
    result.L_hi = hi;
    result.L0_estimate = 0.5 * (lo + hi);
    result.sharpness_gap = hi - lo;
    return result;
}

ContinuityReport continuity_bound_check(const Nonlinearity& base, double L1, double L2,
                                        const std::vector<double>& probe_times, const Grid& grid,
                                        double dt) {
    if (!(L1 > 0.0) || !(L2 >= L1)) {
        throw Error(ErrorCode::Domain, "continuity bound needs 0 < L1 <= L2");
    }
    const Nonlinearity f1 = base.scaled(L1);
    const Nonlinearity f2 = base.scaled(L2);
    SimParams params{dt > 0.0 ? dt : default_dt(grid, f2), 0.0, Boundary::DirichletZero, 0};
    const Stepper s1(grid, f1, params);
    const Stepper s2(grid, f2, params);
    Field a = indicator_ic(grid, 1.0);
    Field b = a;

    ContinuityReport report;
    report.lipschitz = base.lipschitz_constant();
    report.min_difference = std::numeric_limits<double>::infinity();
    report.min_slack = std::numeric_limits<double>::infinity();

    std::vector<double> times = probe_times;
    std::sort(times.begin(), times.end());
    long k = 0;
    for (double t : times) {
        if (t < 0.0) throw Error(ErrorCode::Domain, "probe times must be non-negative");
        const long target = std::lround(t / params.dt);
        for (; k < target; ++k) {
            s1.advance(a);
            s2.advance(b);
        }
        const double time = static_cast<double>(k) * params.dt;
        const double bound = (L2 - L1) / L1 * std::expm1(report.lipschitz * L1 * time);
        double max_diff = 0.0;
        for (int j = 0; j < grid.size(); ++j) {
            const auto idx = static_cast<std::size_t>(j);
            const double d = b.values[idx] - a.values[idx];
            max_diff = std::max(max_diff, d);
            const double slack = bound - d;
            if (d < report.min_difference) report.min_difference = d;
            if (slack < report.min_slack) {
                report.min_slack = slack;
                report.worst_t = time;
                report.worst_x = grid.x(j);
            }
        }
        report.times.push_back(time);
        report.max_difference.push_back(max_diff);
        report.bound.push_back(bound);
    }
    report.ok = !times.empty() && report.min_difference >= -1e-12 && report.min_slack >= -1e-8;
    return report;
}

double domination_margin(const Nonlinearity& f, const Nonlinearity& g, double theta1, double eps1,
                         double theta_max) {
    if (!(theta1 > 0.0) || !(eps1 > 0.0) || !(theta_max <= 1.0) || !(theta_max >= theta1)) {
        throw Error(ErrorCode::Domain, "domination check needs 0 < theta1 <= theta_max <= 1, eps1 > 0");
    }
    constexpr int n_theta = 200;
    constexpr int n_eps = 50;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_theta; ++i) {
        const double theta = theta1 + (theta_max - theta1) * i / (n_theta - 1);
        const double ft = f.eval(theta);
        for (int k = 0; k < n_eps; ++k) {
            const double eps = eps1 * k / (n_eps - 1);
            const double arg = std::min(theta + eps * (theta - theta1), 1.0);
            worst = std::min(worst, g.eval(arg) - (1.0 + eps) * ft);
        }
    }
    return worst;
}

bool check_domination(const Nonlinearity& f, const Nonlinearity& g, double theta1, double eps1,
                      double theta_max) {
    return domination_margin(f, g, theta1, eps1, theta_max) >= -1e-12;
}

DominationSetup amplitude_pair_setup(const Nonlinearity& base, double L1, double L2) {
    if (!(L1 > 0.0) || !(L2 > L1)) throw Error(ErrorCode::Domain, "amplitude pair needs 0 < L1 < L2");
    const double theta0 = base.ignition_temperature();
    if (!(theta0 > 0.0)) {
        throw Error(ErrorCode::UnsupportedKind, "amplitude pair needs a positive ignition temperature");
    }
    const double delta = base.monotone_margin();
    return DominationSetup{base.scaled(L1), base.scaled(L2), 0.5 * theta0,
                           std::min(L2 / L1 - 1.0, delta / (delta + theta0)),
                           std::min(1.0, theta0 + 0.5 * delta)};
}

RatioWitness ratio_witness(const Nonlinearity& f, const Nonlinearity& g, const Field& ic_T,
                           const Field& ic_S, double theta1, double eps1, double theta_max,
                           const SimParams& params, int probe_every) {
    if (!check_domination(f, g, theta1, eps1, theta_max)) {
        throw Error(ErrorCode::Precondition, "g does not dominate f on the requested range");
    }
    if (!(ic_T.grid == ic_S.grid)) throw Error(ErrorCode::Precondition, "T and S live on different grids");
    if (params.boundary != Boundary::DirichletZero) {
        throw Error(ErrorCode::Precondition, "ratio witness requires Dirichlet boundary conditions");
    }
    bool strict = false;
    for (std::size_t j = 0; j < ic_T.values.size(); ++j) {
        if (ic_T.values[j] > ic_S.values[j]) {
            throw Error(ErrorCode::Precondition, "initial data must satisfy T <= S nodewise");
        }
        strict = strict || ic_T.values[j] < ic_S.values[j];
    }
    if (!strict) throw Error(ErrorCode::Precondition, "initial data must satisfy T < S somewhere");
    if (ic_S.values.front() != 0.0 || ic_S.values.back() != 0.0) {
        throw Error(ErrorCode::Precondition, "S initial data must vanish at the boundary");
    }
    if (ic_T.sup() > theta_max) {
        throw Error(ErrorCode::Precondition, "sup of T initial data exceeds theta_max");
    }

    const Stepper step_T(ic_T.grid, f, params);
    const Stepper step_S(ic_S.grid, g, params);
    Field T = ic_T;
    Field S = ic_S;
    RatioWitness w;
    w.theta1 = theta1;
    w.eps1 = eps1;
    const double cap = 1.0 + eps1;

    auto record = [&] {
        double omega = cap;
        bool nonempty = false;
        for (std::size_t j = 0; j < T.values.size(); ++j) {
            const double t = T.values[j];
            if (t > theta1) {
                nonempty = true;
                omega = std::min(omega, (S.values[j] - theta1) / (t - theta1));
            }
        }
        w.times.push_back(T.time);
        w.omega.push_back(omega);
        if (nonempty && !w.started) {
            w.started = true;
            w.start_index = w.omega.size() - 1;
            w.t_start = T.time;
        }
    };

    const long n_steps = static_cast<long>(std::ceil(params.t_max / params.dt - 1e-9));
    const int every = std::max(1, probe_every);
    const double t0 = T.time;
    record();
    for (long k = 1; k <= n_steps; ++k) {
        step_T.advance(T);
        step_S.advance(S);
        T.time = S.time = t0 + static_cast<double>(k) * params.dt;
        if (k % every == 0 || k == n_steps) record();
    }

    w.terminal = w.omega.back();
    if (w.started) {
        const double start = w.omega[w.start_index];
        double running = start;
        for (std::size_t i = w.start_index; i < w.omega.size(); ++i) {
            w.worst_drop = std::max(w.worst_drop, start - w.omega[i]);
            running = std::max(running, w.omega[i]);
            w.max_decrease = std::max(w.max_decrease, running - w.omega[i]);
        }
    }
    w.holds = w.worst_drop <= 1e-6 && w.terminal > 1.0;
    return w;
}

}  // namespace sharpfront
