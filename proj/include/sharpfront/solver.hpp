#pragma once

#include "sharpfront/nonlinearity.hpp"
#include "sharpfront/tridiagonal.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sharpfront {

/// Uniform symmetric grid on [-X, X] with an even number of cells.
/// Node positions are computed as (j - n/2) h so that x_j = -x_{n-j} exactly.
class Grid {
public:
    /// Default desk-scale grid: X = 40, h = 0.05.
    Grid() : Grid(40.0, 1600) {}
    Grid(double half_width, int n_cells);

    double half_width() const { return half_width_; }
    int n_cells() const { return n_cells_; }
    int size() const { return n_cells_ + 1; }
    int center() const { return n_cells_ / 2; }
    double spacing() const { return spacing_; }
    double x(int j) const { return static_cast<double>(j - n_cells_ / 2) * spacing_; }
    std::vector<double> nodes() const;

    bool operator==(const Grid&) const = default;

private:
    double half_width_;
    int n_cells_;
    double spacing_;
};

/// Default desk-scale grid: X = 40, h = 0.05.
Grid default_grid();

struct Field {
    Grid grid;
    double time = 0.0;
    std::vector<double> values;

    double at_center() const { return values[static_cast<std::size_t>(grid.center())]; }
    double sup() const;
    /// max |x_j| over nodes with T >= level, or 0 when no node reaches it.
    double level_radius(double level) const;
    /// Sum of h * T_j (midpoint-cell mass).
    double mass() const;
};

Field make_field(const Grid& grid, std::function<double(double)> profile, double time = 0.0);

enum class Boundary { DirichletZero, NeumannZero };

std::string to_string(Boundary b);

struct SimParams {
    double dt = 0.0;
    double t_max = 0.0;
    Boundary boundary = Boundary::DirichletZero;
    int snapshot_every = 0;  // 0: no snapshots besides the final field

    bool operator==(const SimParams&) const = default;
};

/// min(0.25 h^2, 0.5 / c), with c the Lipschitz constant of `spec`.
double default_dt(const Grid& grid, const Nonlinearity& spec);
SimParams default_params(const Grid& grid, const Nonlinearity& spec, double t_max);

/// alpha times the fraction of each dual cell [x_j - h/2, x_j + h/2] (clipped to
/// the domain) covered by [-L, L]; the discrete mass is exactly 2 alpha L.
Field indicator_ic(const Grid& grid, double L, double alpha = 1.0);

/// Lie-split monotone step: clamped explicit reaction, then backward-Euler diffusion.
/// The diffusion matrix is factored once and reused.
class Stepper {
public:
    Stepper(const Grid& grid, const Nonlinearity& spec, const SimParams& params);

    /// Advances `field` by one dt in place.
    void advance(Field& field) const;

    const SimParams& params() const { return params_; }
    const Nonlinearity& spec() const { return spec_; }

private:
    Grid grid_;
    Nonlinearity spec_;
    SimParams params_;
    TridiagonalSystem diffusion_;
    mutable std::vector<double> scratch_;
};

/// One step from `field`; convenience wrapper around Stepper.
Field step(const Field& field, const Nonlinearity& spec, const SimParams& params);

/// Sup-distance on |x| <= window between the field and a reference profile.
struct ReferenceProbe {
    std::string name;
    std::function<double(double)> profile;
    double window = 1.0;
};

struct ProbeSet {
    std::vector<double> levels{0.5};
    std::vector<ReferenceProbe> references;
    int probe_every = 1;
};

struct ProbeSeries {
    std::vector<double> times;
    std::vector<double> midpoint;
    std::vector<double> sup;
    std::vector<double> levels;
    std::vector<std::vector<double>> radius;     // radius[k][i] for levels[k]
    std::vector<std::string> reference_names;
    std::vector<std::vector<double>> distance;   // distance[k][i] for references[k]

    std::size_t size() const { return times.size(); }
};

struct Trajectory {
    std::vector<Field> snapshots;
    ProbeSeries probes;
    Field final_field;
    bool stopped_early = false;
};

/// Called after every probe sample; return true to stop the run.
using StopPredicate = std::function<bool(const ProbeSeries&, const Field&)>;

/// Repeated `step` until t_max (or until `stop` fires).
Trajectory simulate(const Field& ic, const Nonlinearity& spec, const SimParams& params,
                    const ProbeSet& probes = {}, const StopPredicate& stop = {});

/// Unit-interval form of the half-width-L problem: amplitude times L^2,
/// initial datum chi_[-1,1]. A solution T of the original problem relates to
/// the rescaled one by T~(t, x) = T(L^2 t, L x).
struct RescaledProblem {
    Nonlinearity spec;
    double ic_half_width = 1.0;
    double time_scale = 1.0;    // L^2
    double length_scale = 1.0;  // L

    double original_time(double t) const { return time_scale * t; }
    double original_x(double x) const { return length_scale * x; }
};

RescaledProblem rescaled_problem(const Nonlinearity& spec, double L);

}  // namespace sharpfront
