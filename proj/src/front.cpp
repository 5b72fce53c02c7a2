#include "sharpfront/front.hpp"

#include "sharpfront/error.hpp"

#include <algorithm>
#include <cmath>

namespace sharpfront {

namespace {

struct State {
    double phi;
    double psi;
};

class PhasePlane {
public:
    PhasePlane(const Nonlinearity& spec, double v) : spec_(spec), v_(v) {}

    State rhs(const State& s) const {
        return {s.psi, -v_ * s.psi - spec_.eval_unchecked(std::clamp(s.phi, 0.0, 1.0))};
    }

    State rk4(const State& s, double h) const {
        const State k1 = rhs(s);
        const State k2 = rhs({s.phi + 0.5 * h * k1.phi, s.psi + 0.5 * h * k1.psi});
        const State k3 = rhs({s.phi + 0.5 * h * k2.phi, s.psi + 0.5 * h * k2.psi});
        const State k4 = rhs({s.phi + h * k3.phi, s.psi + h * k3.psi});
        return {s.phi + h / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi),
                s.psi + h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi)};
    }

    /// Partial step from `s` that lands on phi = level (s.phi on the far side of level).
    State land_on(const State& s, double level) const {
        double tau = (level - s.phi) / s.psi;
        State out = s;
        for (int it = 0; it < 8; ++it) {
            out = rk4(s, tau);
            const double err = out.phi - level;
            if (std::abs(err) < 1e-15) break;
            tau -= err / out.psi;
        }
        return out;
    }

private:
    const Nonlinearity& spec_;
    double v_;
};

// Eigenvalues of the linearization at a saddle with f'(p) < 0.
double unstable_rate(double v, double fprime) { return 0.5 * (-v + std::sqrt(v * v - 4.0 * fprime)); }
double stable_rate(double v, double fprime) { return 0.5 * (-v - std::sqrt(v * v - 4.0 * fprime)); }

void require_bistable(const Nonlinearity& spec) {
    if (spec.check_sign_pattern().pattern != SignPattern::Bistable || !(spec.slope(0.0) < 0.0) ||
        !(spec.slope(1.0) < 0.0)) {
        throw Error(ErrorCode::UnsupportedKind,
                    "front_speed requires a bistable f with f'(0) < 0 and f'(1) < 0");
    }
}

}  // namespace

ShotOutcome shoot(const Nonlinearity& spec, double v, const FrontOptions& options) {
    const PhasePlane plane(spec, v);
    const double lambda = unstable_rate(v, spec.slope(1.0));
    State s{1.0 - options.launch, -options.launch * lambda};
    const long max_steps = static_cast<long>(options.max_length / options.step);
    for (long k = 0; k < max_steps; ++k) {
        s = plane.rk4(s, options.step);
        // Entering phi < 0 counts as undershoot even if psi would recover later.
        if (s.phi <= 0.0) return ShotOutcome::Undershoot;
        if (s.psi >= 0.0) return ShotOutcome::Overshoot;
    }
    // Still creeping into the origin: compare with the stable eigendirection there.
    const double mu = stable_rate(v, spec.slope(0.0));
    return s.psi / s.phi < mu ? ShotOutcome::Undershoot : ShotOutcome::Overshoot;
}

FrontSolution front_speed(const Nonlinearity& spec, double tol, const FrontOptions& options) {
    require_bistable(spec);
    if (!(tol > 0.0)) throw Error(ErrorCode::Domain, "front_speed tolerance must be positive");

    const double v_max = 2.0 * std::sqrt(spec.lipschitz_constant());
    double lo = -v_max;
    double hi = v_max;
    if (shoot(spec, lo, options) != ShotOutcome::Undershoot ||
        shoot(spec, hi, options) != ShotOutcome::Overshoot) {
        throw Error(ErrorCode::Bracket, "no overshoot/undershoot change on [-2 sqrt(c), 2 sqrt(c)]");
    }
    FrontSolution out;
    while (hi - lo > tol) {
        if (++out.iterations > 200) {
            throw Error(ErrorCode::Convergence, "front_speed bisection exceeded 200 iterations");
        }
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (shoot(spec, mid, options) == ShotOutcome::Overshoot ? hi : lo) = mid;
    }
    const double v = 0.5 * (lo + hi);
    out.speed = v;
    out.bracket_width = hi - lo;

    const PhasePlane plane(spec, v);
    const double h = options.step;
    const long max_steps = static_cast<long>(options.max_length / h);

    // Orbit leaving (1, 0), run down to phi = 1/2.
    State upper{1.0 - options.launch, -options.launch * unstable_rate(v, spec.slope(1.0))};
    for (long k = 0;; ++k) {
        const State next = plane.rk4(upper, h);
        if (next.phi <= 0.5) {
            upper = plane.land_on(upper, 0.5);
            break;
        }
        if (next.psi >= 0.0 || k >= max_steps) {
            throw Error(ErrorCode::Convergence, "front orbit from (1,0) never reached phi = 1/2");
        }
        upper = next;
    }
    // Orbit entering (0, 0), run backwards up to phi = 1/2.
    const double mu = stable_rate(v, spec.slope(0.0));
    State lower{options.launch, options.launch * mu};
    for (long k = 0;; ++k) {
        const State next = plane.rk4(lower, -h);
        if (next.phi >= 0.5) {
            lower = plane.land_on(lower, 0.5);
            break;
        }
        if (next.psi >= 0.0 || k >= max_steps) {
            throw Error(ErrorCode::Convergence, "front orbit into (0,0) never reached phi = 1/2");
        }
        lower = next;
    }
    out.shoot_residual = std::abs(upper.psi - lower.psi);

    // Tabulate on a uniform xi grid from the join point phi(0) = 1/2.
    const long stride = std::max(1L, std::lround(options.table_spacing / h));
    const double spacing = static_cast<double>(stride) * h;
    std::vector<double> left;
    State s = upper;
    for (long k = 1; k <= max_steps; ++k) {
        s = plane.rk4(s, -h);
        if (k % stride == 0) {
            if (s.phi >= 1.0 - options.tail_cutoff || !(s.psi < 0.0)) break;
            left.push_back(s.phi);
        }
    }
    std::vector<double> right;
    s = lower;
    for (long k = 1; k <= max_steps; ++k) {
        s = plane.rk4(s, h);
        if (k % stride == 0) {
            if (s.phi <= options.tail_cutoff || !(s.psi < 0.0)) break;
            right.push_back(s.phi);
        }
    }
    const auto n_left = static_cast<long>(left.size());
    for (long i = n_left - 1; i >= 0; --i) {
        out.xis.push_back(-static_cast<double>(i + 1) * spacing);
        out.phis.push_back(left[static_cast<std::size_t>(i)]);
    }
    out.xis.push_back(0.0);
    out.phis.push_back(0.5);
    for (std::size_t i = 0; i < right.size(); ++i) {
        out.xis.push_back(static_cast<double>(i + 1) * spacing);
        out.phis.push_back(right[i]);
    }
    return out;
}

double profile_residual(const FrontSolution& front, const Nonlinearity& spec) {
    const std::size_t n = front.xis.size();
    if (n < 3) throw Error(ErrorCode::Resolution, "front table too short");
    const double d = (front.xis.back() - front.xis.front()) / static_cast<double>(n - 1);
    const double v = front.speed;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double second = (front.phis[i - 1] - 2.0 * front.phis[i] + front.phis[i + 1]) / (d * d);
        const double first = (front.phis[i + 1] - front.phis[i - 1]) / (2.0 * d);
        const double r = second + v * first + spec.eval(std::clamp(front.phis[i], 0.0, 1.0));
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

}  // namespace sharpfront
