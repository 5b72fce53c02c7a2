#pragma once

#include "sharpfront/nonlinearity.hpp"
#include "sharpfront/solver.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sharpfront {

/// `nonlinearity` section. Only the fields relevant to `kind` are used.
struct NonlinearityConfig {
    std::string kind = "ignition";  // ignition | kpp | arrhenius | bistable_cubic | tabulated
    double theta0 = 0.3;
    double a = 0.25;
    double A = 1.0;                 // Arrhenius activation energy
    std::string form = "logistic";  // kpp: logistic | power
    double p = 2.0;
    double amplitude = 1.0;
    std::vector<std::pair<double, double>> table;  // (theta, f) breakpoints
    std::string declared = "bistable";            // tabulated: ignition | combustion | bistable

    bool operator==(const NonlinearityConfig&) const = default;
};

struct GridConfig {
    double half_width = 40.0;
    int n_cells = 1600;
    bool operator==(const GridConfig&) const = default;
};

struct SimConfig {
    std::optional<double> dt;  // default: min(0.25 h^2, 0.5/c)
    double t_max = 50.0;
    std::string boundary = "dirichlet";
    int snapshot_every = 0;
    double probe_dt = 0.05;
    std::vector<double> levels{0.5};
    bool operator==(const SimConfig&) const = default;
};

struct IcConfig {
    double L = 1.0;
    double alpha = 1.0;
    bool operator==(const IcConfig&) const = default;
};

struct ThresholdConfig {
    double L_min = 0.05;
    double L_max = 10.0;
    double gap_tol = 1e-3;
    int max_iter = 40;
    double t_max = 200.0;
    bool operator==(const ThresholdConfig&) const = default;
};

struct FrontConfig {
    double tol = 1e-10;
    double step = 1e-3;
    double table_spacing = 1e-2;
    bool operator==(const FrontConfig&) const = default;
};

struct BumpConfig {
    double u_min = 1e-6;
    double spacing = 0.01;  // output resampling step
    bool operator==(const BumpConfig&) const = default;
};

/// Ratio-witness run: T evolves with the top-level nonlinearity, S with `g`.
/// Unset theta1/eps1/theta_max are derived for two amplitudes of one ignition profile.
struct Lemma22Config {
    NonlinearityConfig g;
    std::optional<double> theta1;
    std::optional<double> eps1;
    std::optional<double> theta_max;
    IcConfig ic_T;
    IcConfig ic_S;
    double warmup = 1.0;  // minimum co-evolution time; continues until sup T <= theta_max
    double t_max = 50.0;
    bool operator==(const Lemma22Config&) const = default;
};

/// Each cell is a set of dotted-key overrides applied to the base config.
struct SweepConfig {
    std::string command = "threshold";  // threshold | front | bump | simulate
    std::vector<nlohmann::json> cells;
    bool operator==(const SweepConfig&) const = default;
};

struct RunConfig {
    NonlinearityConfig nonlinearity;
    GridConfig grid;
    SimConfig sim;
    IcConfig ic;
    ThresholdConfig threshold;
    FrontConfig front;
    BumpConfig bump;
    Lemma22Config lemma22;
    SweepConfig sweep;

    bool operator==(const RunConfig&) const = default;
};

/// Parses JSON text; syntax errors carry line and column, type and range errors the
/// dotted field name. All failures throw ErrorCode::Config.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Raw JSON form before conversion, for applying overrides.
nlohmann::json parse_json(const std::string& text);
RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const RunConfig& config);
std::string emit_config(const RunConfig& config);

/// Applies `key=value` with a dotted key; value is read as JSON when it parses,
/// otherwise as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

Nonlinearity build_nonlinearity(const NonlinearityConfig& config);
Grid build_grid(const GridConfig& config);
SimParams build_params(const RunConfig& config, const Nonlinearity& spec, double t_max);
Boundary parse_boundary(const std::string& name);

}  // namespace sharpfront
