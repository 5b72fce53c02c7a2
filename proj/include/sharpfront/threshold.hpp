#pragma once

#include "sharpfront/nonlinearity.hpp"
#include "sharpfront/solver.hpp"
#include "sharpfront/stationary.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sharpfront {

struct Extinction {
    double t_ext = 0.0;  // first time sup T <= ext_level
};

struct Propagation {
    double t_prop = 0.0;  // first time T(t,0) >= confirm_level with a growing front
};

/// Transient diagnostic: the run lingered near the critical state.
struct NearCritical {
    double plateau_level = 0.0;
    double plateau_span = 0.0;
    double profile_distance = 0.0;  // smallest sup-distance to the critical profile seen
};

struct Undetermined {
    double horizon = 0.0;
};

using Outcome = std::variant<Extinction, Propagation, NearCritical, Undetermined>;

std::string outcome_name(const Outcome& outcome);

/// -1 extinction, 0 undecided (near-critical or undetermined), +1 propagation.
int outcome_side(const Outcome& outcome);

struct OutcomeCriteria {
    double prop_level = 0.99;     // preliminary midpoint level
    double confirm_level = 0.99;  // midpoint level that confirms propagation
    double growth_margin = 1.0;   // r_{1/2} growth above its running minimum
    double ext_level = 0.0;
    double plateau_level = 0.0;   // theta0 for ignition, theta2 for bistable
    double band_width = 0.05;
    double plateau_span = 0.0;
    double window = 1.0;          // |x| <= window for the profile distance
    /// Critical profile on |x| <= window. Constant theta0 for ignition, U for bistable,
    /// 0 (sup over the whole grid) when theta0 = 0.
    std::function<double(double)> reference;
    /// Band test on the midpoint (ignition) rather than on the profile distance.
    bool midpoint_band = false;
};

/// Per-kind defaults. Bistable specs need a bump profile for the reference.
OutcomeCriteria default_criteria(const Nonlinearity& spec, double t_max,
                                 const StationaryProfile* bump = nullptr);

/// Probe set matching `criteria`: level 1/2 and the critical-profile distance.
ProbeSet criteria_probes(const OutcomeCriteria& criteria, int probe_every);

/// Applies the decision rules sample by sample, so a run can stop as soon as
/// the outcome is decided.
class OutcomeTracker {
public:
    explicit OutcomeTracker(const OutcomeCriteria& criteria) : criteria_(criteria) {}

    /// Consumes sample `i` of `probes`; returns a decisive outcome once one is reached.
    std::optional<Outcome> update(const ProbeSeries& probes, std::size_t i);

    /// NearCritical or Undetermined after the horizon without a decision.
    Outcome finish(double horizon) const;

    double longest_plateau() const { return longest_span_; }
    double min_distance() const { return min_distance_; }

private:
    const OutcomeCriteria& criteria_;
    double radius_min_ = 0.0;
    bool started_ = false;
    bool in_band_ = false;
    double band_start_ = 0.0;
    double longest_span_ = 0.0;
    double min_distance_ = 0.0;
};

/// Classifies a finished trajectory. The probe set must come from `criteria_probes`.
Outcome classify_outcome(const Trajectory& trajectory, const Nonlinearity& spec,
                         const OutcomeCriteria& criteria);

/// Longest time span over which distance[k] stays within `band`.
double plateau_duration(const ProbeSeries& probes, std::size_t k, double band);

struct IndicatorRun {
    Outcome outcome;
    ProbeSeries probes;
    Grid grid;
    double horizon = 0.0;
    bool widened = false;  // re-run on a doubled domain
    double trend = 0.0;    // midpoint change over the last quarter of the run
};

/// Runs indicator data of half-width L, stopping as soon as the outcome is decided.
/// Under Dirichlet conditions, a boundary-adjacent value above 1e-6 triggers one
/// re-run with X doubled at the same spacing.
IndicatorRun run_indicator(const Nonlinearity& spec, const Grid& grid, const SimParams& params,
                           double L, const OutcomeCriteria& criteria, double probe_dt = 0.05);

struct TraceEntry {
    double L = 0.0;
    Outcome outcome;
    int side = 0;                 // side used by the bisection
    bool extended = false;        // horizon doubled
    bool assigned_by_trend = false;
    double horizon = 0.0;
    ProbeSeries probes;
};

struct ThresholdResult {
    double L_lo = 0.0;
    double L_hi = 0.0;
    double L0_estimate = 0.0;
    double sharpness_gap = 0.0;
    int iterations = 0;
    bool hair_trigger = false;
    std::vector<TraceEntry> trace;
};

struct ThresholdOptions {
    double gap_tol = 1e-3;
    int max_iter = 40;
    double probe_dt = 0.05;
};

/// Bisection on the indicator half-width. The bracket ends are validated first;
/// a propagating lower end with theta0 = 0 reports L0 = 0 (hair trigger).
ThresholdResult find_threshold(const Nonlinearity& spec, const Grid& grid, const SimParams& params,
                               double L_min, double L_max, const OutcomeCriteria& criteria,
                               const ThresholdOptions& options = {});

struct ContinuityReport {
    bool ok = false;
    double lipschitz = 0.0;
    double min_difference = 0.0;  // smallest T^{L2} - T^{L1} seen
    double min_slack = 0.0;       // smallest bound - difference seen
    double worst_t = 0.0;
    double worst_x = 0.0;
    std::vector<double> times;
    std::vector<double> max_difference;
    std::vector<double> bound;
};

/// Co-evolves the amplitude-L1 and amplitude-L2 problems from chi_[-1,1] and checks
/// 0 <= T^{L2} - T^{L1} <= ((L2 - L1)/L1)(exp(c L1 t) - 1) + 1e-8 at each probe time.
ContinuityReport continuity_bound_check(const Nonlinearity& base, double L1, double L2,
                                        const std::vector<double>& probe_times, const Grid& grid,
                                        double dt = 0.0);

/// min over the 200 x 50 grid of g(theta + eps (theta - theta1)) - (1 + eps) f(theta)
/// on [theta1, theta_max] x [0, eps1]. Arguments past 1 are clamped to 1.
double domination_margin(const Nonlinearity& f, const Nonlinearity& g, double theta1, double eps1,
                         double theta_max);

bool check_domination(const Nonlinearity& f, const Nonlinearity& g, double theta1, double eps1,
                      double theta_max);

/// Two ignition amplitudes L1 < L2 of one base profile, with the floor and margin
/// that make the domination hold.
struct DominationSetup {
    Nonlinearity f;
    Nonlinearity g;
    double theta1 = 0.0;
    double eps1 = 0.0;
    double theta_max = 0.0;
};

DominationSetup amplitude_pair_setup(const Nonlinearity& base, double L1, double L2);

struct RatioWitness {
    double theta1 = 0.0;
    double eps1 = 0.0;
    std::vector<double> times;
    std::vector<double> omega;
    double t_start = 0.0;
    std::size_t start_index = 0;
    bool started = false;
    double worst_drop = 0.0;    // max of omega(t_start) - omega(t) over t >= t_start
    double max_decrease = 0.0;  // largest fall below the running maximum after t_start
    double terminal = 0.0;
    bool holds = false;       // worst_drop <= 1e-6 and terminal > 1
};

/// Co-evolves T (reaction f, data ic_T) and S (reaction g, data ic_S) and records
/// omega(t) = min(1 + eps1, inf over {T > theta1} of (S - theta1)/(T - theta1)).
RatioWitness ratio_witness(const Nonlinearity& f, const Nonlinearity& g, const Field& ic_T,
                           const Field& ic_S, double theta1, double eps1, double theta_max,
                           const SimParams& params, int probe_every = 1);

}  // namespace sharpfront
