#include "sharpfront/solver.hpp"

#include "sharpfront/error.hpp"

#include <algorithm>
#include <cmath>

namespace sharpfront {

Grid::Grid(double half_width, int n_cells)
    : half_width_(half_width), n_cells_(n_cells), spacing_(2.0 * half_width / n_cells) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw Error(ErrorCode::Domain, "grid half_width must be positive");
    }
    if (n_cells <= 0 || n_cells % 2 != 0) {
        throw Error(ErrorCode::Domain, "grid n_cells must be an even positive integer");
    }
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(static_cast<std::size_t>(size()));
    for (int j = 0; j < size(); ++j) xs[static_cast<std::size_t>(j)] = x(j);
    return xs;
}

Grid default_grid() { return Grid(40.0, 1600); }

double Field::sup() const { return *std::max_element(values.begin(), values.end()); }

double Field::level_radius(double level) const {
    double r = 0.0;
    const int c = grid.center();
    // Scan outward from each end; the first hit gives the largest |x|.
    for (int j = 0; j < c; ++j) {
        if (values[static_cast<std::size_t>(j)] >= level) {
            r = std::max(r, -grid.x(j));
            break;
        }
    }
    for (int j = grid.n_cells(); j > c; --j) {
        if (values[static_cast<std::size_t>(j)] >= level) {
            r = std::max(r, grid.x(j));
            break;
        }
    }
    return r;
}

double Field::mass() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * grid.spacing();
}

Field make_field(const Grid& grid, std::function<double(double)> profile, double time) {
    Field field{grid, time, std::vector<double>(static_cast<std::size_t>(grid.size()))};
    for (int j = 0; j < grid.size(); ++j) {
        field.values[static_cast<std::size_t>(j)] = profile(grid.x(j));
    }
    return field;
}

std::string to_string(Boundary b) {
    return b == Boundary::DirichletZero ? "dirichlet" : "neumann";
}

double default_dt(const Grid& grid, const Nonlinearity& spec) {
    const double h = grid.spacing();
    const double c = spec.lipschitz_constant();
    const double diffusive = 0.25 * h * h;
    return c > 0.0 ? std::min(diffusive, 0.5 / c) : diffusive;
}

SimParams default_params(const Grid& grid, const Nonlinearity& spec, double t_max) {
    return SimParams{default_dt(grid, spec), t_max, Boundary::DirichletZero, 0};
}

Field indicator_ic(const Grid& grid, double L, double alpha) {
    if (!(L >= 0.0) || L > grid.half_width()) {
        throw Error(ErrorCode::Domain, "indicator half-width must lie in [0, X]");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw Error(ErrorCode::Domain, "indicator amplitude must lie in (0, 1]");
    }
    const double X = grid.half_width();
    const double h = grid.spacing();
    Field field{grid, 0.0, std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0)};
    for (int j = 0; j < grid.size(); ++j) {
        const double x = grid.x(j);
        const double lo = std::max(x - 0.5 * h, -X);
        const double hi = std::min(x + 0.5 * h, X);
        const double covered = std::min(hi, L) - std::max(lo, -L);
        const double fraction = std::clamp(covered / (hi - lo), 0.0, 1.0);
        field.values[static_cast<std::size_t>(j)] = alpha * fraction;
    }
    return field;
}

namespace {

TridiagonalSystem diffusion_system(const Grid& grid, const SimParams& params) {
    const double r = params.dt / (grid.spacing() * grid.spacing());
    if (params.boundary == Boundary::DirichletZero) {
        // Interior unknowns 1..n-1; boundary nodes are pinned to 0.
        const auto m = static_cast<std::size_t>(grid.n_cells() - 1);
        std::vector<double> lower(m, -r), diag(m, 1.0 + 2.0 * r), upper(m, -r);
        lower.front() = 0.0;
        upper.back() = 0.0;
        return TridiagonalSystem(std::move(lower), std::move(diag), std::move(upper));
    }
    // Reflecting ghost nodes: the end rows carry a doubled off-diagonal.
    const auto m = static_cast<std::size_t>(grid.size());
    std::vector<double> lower(m, -r), diag(m, 1.0 + 2.0 * r), upper(m, -r);
    lower.front() = 0.0;
    upper.front() = -2.0 * r;
    lower.back() = -2.0 * r;
    upper.back() = 0.0;
    return TridiagonalSystem(std::move(lower), std::move(diag), std::move(upper));
}

}  // namespace

Stepper::Stepper(const Grid& grid, const Nonlinearity& spec, const SimParams& params)
    : grid_(grid), spec_(spec), params_(params) {
    if (!(params.dt > 0.0) || !std::isfinite(params.dt)) {
        throw Error(ErrorCode::Domain, "time step dt must be positive");
    }
    const double c = spec.lipschitz_constant();
    if (c > 0.0 && params.dt > 1.0 / c) {
        throw Error(ErrorCode::Domain, "dt exceeds the monotonicity limit 1/c");
    }
    diffusion_ = diffusion_system(grid, params);
}

void Stepper::advance(Field& field) const {
    auto& u = field.values;
    const double dt = params_.dt;
    spec_.react(u, dt);
    if (params_.boundary == Boundary::DirichletZero) {
        u.front() = 0.0;
        u.back() = 0.0;
        diffusion_.solve_in_place(std::span<double>(u).subspan(1, u.size() - 2));
    } else {
        diffusion_.solve_in_place(std::span<double>(u));
    }
    for (double v : u) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NumericalFault, "non-finite value after time step");
        }
    }
    field.time += dt;
}

Field step(const Field& field, const Nonlinearity& spec, const SimParams& params) {
    Field next = field;
    Stepper(field.grid, spec, params).advance(next);
    return next;
}

namespace {

struct ReferenceWindow {
    std::vector<std::size_t> nodes;
    std::vector<double> values;
};

void record_probe(ProbeSeries& out, const Field& field, const ProbeSet& probes,
                  const std::vector<ReferenceWindow>& windows) {
    out.times.push_back(field.time);
    out.midpoint.push_back(field.at_center());
    out.sup.push_back(field.sup());
    for (std::size_t k = 0; k < probes.levels.size(); ++k) {
        out.radius[k].push_back(field.level_radius(probes.levels[k]));
    }
    for (std::size_t k = 0; k < windows.size(); ++k) {
        double worst = 0.0;
        for (std::size_t i = 0; i < windows[k].nodes.size(); ++i) {
            worst = std::max(worst, std::abs(field.values[windows[k].nodes[i]] - windows[k].values[i]));
        }
        out.distance[k].push_back(worst);
    }
}

}  // namespace

Trajectory simulate(const Field& ic, const Nonlinearity& spec, const SimParams& params,
                    const ProbeSet& probes, const StopPredicate& stop) {
    const Stepper stepper(ic.grid, spec, params);
    const Grid& grid = ic.grid;

    std::vector<ReferenceWindow> windows;
    for (const auto& ref : probes.references) {
        ReferenceWindow w;
        for (int j = 0; j < grid.size(); ++j) {
            if (std::abs(grid.x(j)) <= ref.window) {
                w.nodes.push_back(static_cast<std::size_t>(j));
                w.values.push_back(ref.profile(grid.x(j)));
            }
        }
        windows.push_back(std::move(w));
    }

    Trajectory traj;
    traj.probes.levels = probes.levels;
    traj.probes.radius.resize(probes.levels.size());
    for (const auto& ref : probes.references) traj.probes.reference_names.push_back(ref.name);
    traj.probes.distance.resize(probes.references.size());

    const int probe_every = std::max(1, probes.probe_every);
    const long n_steps = static_cast<long>(std::ceil(params.t_max / params.dt - 1e-9));
    const double t0 = ic.time;

    Field field = ic;
    record_probe(traj.probes, field, probes, windows);
    if (params.snapshot_every > 0) traj.snapshots.push_back(field);
    if (stop && stop(traj.probes, field)) {
        traj.stopped_early = true;
        traj.final_field = field;
        return traj;
    }

    for (long k = 1; k <= n_steps; ++k) {
        stepper.advance(field);
        field.time = t0 + static_cast<double>(k) * params.dt;
        const bool last = k == n_steps;
        if (params.snapshot_every > 0 && (k % params.snapshot_every == 0)) {
            traj.snapshots.push_back(field);
        }
        if (k % probe_every == 0 || last) {
            record_probe(traj.probes, field, probes, windows);
            if (stop && stop(traj.probes, field)) {
                traj.stopped_early = !last;
                break;
            }
        }
    }
    traj.final_field = std::move(field);
    return traj;
}

RescaledProblem rescaled_problem(const Nonlinearity& spec, double L) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw Error(ErrorCode::Domain, "rescaling half-width must be positive");
    }
    return RescaledProblem{spec.scaled(L * L), 1.0, L * L, L};
}

}  // namespace sharpfront
