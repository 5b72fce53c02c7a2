#include "sharpfront/checks.hpp"

#include "sharpfront/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sharpfront {

double order_violation(const Field& u, const Field& v) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < u.values.size(); ++j) {
        worst = std::max(worst, u.values[j] - v.values[j]);
    }
    return worst;
}

double symmetry_defect(const Field& field) {
    const auto& u = field.values;
    const std::size_t n = u.size() - 1;
    double worst = 0.0;
    for (std::size_t j = 0; j <= n / 2; ++j) worst = std::max(worst, std::abs(u[j] - u[n - j]));
    return worst;
}

double range_defect(const Field& field) {
    double lo = 0.0;
    double hi = 1.0;
    for (double v : field.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return std::max(-lo, hi - 1.0);
}

double radial_monotone_defect(const Field& field) {
    const auto& u = field.values;
    const auto c = static_cast<std::size_t>(field.grid.center());
    double worst = 0.0;
    for (std::size_t j = c; j + 1 < u.size(); ++j) worst = std::max(worst, u[j + 1] - u[j]);
    for (std::size_t j = c; j > 0; --j) worst = std::max(worst, u[j - 1] - u[j]);
    return worst;
}

TurnCount count_turns(const std::vector<double>& series, double dead_band) {
    TurnCount turns;
    int direction = 0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double d = series[i] - series[i - 1];
        if (d > dead_band) {
            if (direction < 0) ++turns.decrease_to_increase;
            direction = 1;
        } else if (d < -dead_band) {
            if (direction > 0) ++turns.increase_to_decrease;
            direction = -1;
        }
    }
    return turns;
}

std::pair<Field, Field> random_ordered_pair(const Grid& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    Field u{grid, 0.0, std::vector<double>(static_cast<std::size_t>(grid.size()))};
    Field v = u;
    for (std::size_t j = 0; j < u.values.size(); ++j) {
        const double a = uniform(rng);
        const double w = uniform(rng);
        u.values[j] = a;
        v.values[j] = a + w * (1.0 - a);
    }
    return {std::move(u), std::move(v)};
}

namespace {

std::string format(double value) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << value;
    return os.str();
}

CheckResult make(std::string name, bool passed, const std::string& detail) {
    return CheckResult{std::move(name), passed, detail};
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const Nonlinearity& spec, const Grid& grid,
                                             const SimParams& params, std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    out.push_back(make("endpoint_zeros", spec.eval(0.0) == 0.0 && spec.eval(1.0) == 0.0,
                       "f(0) = " + format(spec.eval(0.0)) + ", f(1) = " + format(spec.eval(1.0))));

    const double c = spec.lipschitz_constant();
    double lip_excess = 0.0;
    double linearity = 0.0;
    const Nonlinearity doubled = spec.scaled(2.0);
    for (int i = 0; i < 10000; ++i) {
        const double a = uniform(rng);
        const double b = uniform(rng);
        lip_excess = std::max(lip_excess, std::abs(spec.eval(a) - spec.eval(b)) - c * std::abs(a - b));
        linearity = std::max(linearity, std::abs(doubled.eval(a) - 2.0 * spec.eval(a)));
    }
    out.push_back(make("lipschitz_bound", lip_excess <= 1e-14, "c = " + format(c) + ", excess " + format(lip_excess)));
    out.push_back(make("amplitude_linearity", linearity == 0.0, "max defect " + format(linearity)));

    double fd_defect = 0.0;
    constexpr double eta = 1e-5;
    // Kinks of f (plateau end, table breakpoints) are skipped: there the centered
    // difference sees the jump in f' instead of O(eta^2).
    std::vector<double> kinks{spec.ignition_temperature()};
    if (const auto* t = std::get_if<Tabulated>(&spec.kind())) kinks = t->thetas;
    for (int i = 1; i < 100; ++i) {
        const double theta = i / 100.0;
        const bool near_kink = std::any_of(kinks.begin(), kinks.end(),
                                           [&](double k) { return std::abs(theta - k) < 2.0 * eta; });
        if (near_kink) continue;
        const double fd = (spec.potential(theta + eta) - spec.potential(theta - eta)) / (2.0 * eta);
        fd_defect = std::max(fd_defect, std::abs(fd - spec.eval(theta)));
    }
    out.push_back(make("potential_antiderivative", fd_defect <= 1e-8, "max defect " + format(fd_defect)));

    if (spec.check_sign_pattern().pattern == SignPattern::Bistable) {
        try {
            const double t2 = spec.theta2();
            const double F = spec.potential(t2);
            out.push_back(make("theta2_balance",
                               std::abs(F) <= 1e-10 && t2 > spec.ignition_temperature() && t2 < 1.0,
                               "theta2 = " + format(t2) + ", F(theta2) = " + format(F)));
        } catch (const Error& e) {
            out.push_back(make("theta2_balance", false, e.what()));
        }
    }

    // Scheme properties on a short horizon.
    const Stepper stepper(grid, spec, params);
    const long steps = std::min<long>(200, static_cast<long>(std::ceil(params.t_max / params.dt)));
    double order = -1.0;
    double range = 0.0;
    for (int pair = 0; pair < 5; ++pair) {
        auto [u, v] = random_ordered_pair(grid, rng);
        for (long k = 0; k < steps; ++k) {
            stepper.advance(u);
            stepper.advance(v);
            order = std::max(order, order_violation(u, v));
            range = std::max({range, range_defect(u), range_defect(v)});
        }
    }
    out.push_back(make("comparison", order <= 1e-12, "max(u - v) = " + format(order)));
    out.push_back(make("range", range <= 1e-12, "max defect " + format(range)));

    const double L = std::min(1.0, 0.5 * grid.half_width());
    Field indicator = indicator_ic(grid, L);
    double symmetry = 0.0;
    double radial = 0.0;
    std::vector<double> midpoint{indicator.at_center()};
    const long long_steps = static_cast<long>(std::ceil(params.t_max / params.dt));
    for (long k = 0; k < long_steps; ++k) {
        stepper.advance(indicator);
        midpoint.push_back(indicator.at_center());
        if (k % 10 == 0 || k + 1 == long_steps) {
            symmetry = std::max(symmetry, symmetry_defect(indicator));
            radial = std::max(radial, radial_monotone_defect(indicator));
        }
    }
    const TurnCount turns = count_turns(midpoint, 1e-8);
    out.push_back(make("symmetry", symmetry <= 1e-12, "max defect " + format(symmetry)));
    out.push_back(make("radial_monotone", radial <= 1e-10, "max outward increase " + format(radial)));
    out.push_back(make("midpoint_single_turn",
                       turns.decrease_to_increase <= 1 && turns.increase_to_decrease == 0,
                       std::to_string(turns.decrease_to_increase) + " decrease->increase, " +
                           std::to_string(turns.increase_to_decrease) + " increase->decrease"));
    return out;
}

}  // namespace sharpfront
