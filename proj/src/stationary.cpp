#include "sharpfront/stationary.hpp"

#include "sharpfront/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace sharpfront {

namespace {

double integrate(auto&& g, double a, double b, double tol) {
    return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(g, a, b, 12, tol);
}

struct Hermite {
    double h[6];
};

Hermite basis(double t) {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    return {{1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5, t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5,
             0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5, 0.5 * t3 - t4 + 0.5 * t5,
             -4.0 * t3 + 7.0 * t4 - 3.0 * t5, 10.0 * t3 - 15.0 * t4 + 6.0 * t5}};
}

Hermite basis_derivative(double t) {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    return {{-30.0 * t2 + 60.0 * t3 - 30.0 * t4, 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4,
             t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4, 1.5 * t2 - 4.0 * t3 + 2.5 * t4,
             -12.0 * t2 + 28.0 * t3 - 15.0 * t4, 30.0 * t2 - 60.0 * t3 + 30.0 * t4}};
}

// Index i with xs[i] <= x < xs[i+1]; caller guarantees x < xs.back().
std::size_t segment(const std::vector<double>& xs, double x) {
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    return static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - xs.begin() - 1, 0));
}

double clamp_unit(double u) { return std::clamp(u, 0.0, 1.0); }

}  // namespace

double StationaryProfile::value(double x) const {
    x = std::abs(x);
    if (xs.empty()) return 0.0;
    if (x >= xs.back()) return us.back() * std::exp(-tail_rate * (x - xs.back()));
    const std::size_t i = segment(xs, x);
    const double d = xs[i + 1] - xs[i];
    const Hermite b = basis((x - xs[i]) / d);
    return b.h[0] * us[i] + b.h[1] * d * uprimes[i] + b.h[2] * d * d * useconds[i] +
           b.h[3] * d * d * useconds[i + 1] + b.h[4] * d * uprimes[i + 1] + b.h[5] * us[i + 1];
}

double StationaryProfile::derivative(double x) const {
    const double sign = x < 0.0 ? -1.0 : 1.0;
    x = std::abs(x);
    if (xs.empty()) return 0.0;
    if (x >= xs.back()) return -sign * tail_rate * value(x);
    const std::size_t i = segment(xs, x);
    const double d = xs[i + 1] - xs[i];
    const Hermite b = basis_derivative((x - xs[i]) / d);
    const double dudx = (b.h[0] * us[i] + b.h[1] * d * uprimes[i] + b.h[2] * d * d * useconds[i] +
                         b.h[3] * d * d * useconds[i + 1] + b.h[4] * d * uprimes[i + 1] +
                         b.h[5] * us[i + 1]) /
                        d;
    return sign * dudx;
}

StationaryProfile solve_bump(const Nonlinearity& spec, const BumpOptions& options) {
    if (spec.check_sign_pattern().pattern != SignPattern::Bistable) {
        throw Error(ErrorCode::UnsupportedKind, "solve_bump requires a bistable nonlinearity");
    }
    const double theta2 = spec.theta2();
    const double f_crest = spec.eval(theta2);
    if (!(f_crest > 0.0)) {
        throw Error(ErrorCode::DegenerateBalance, "f(theta2) <= 0: no bump through theta2");
    }
    if (!(options.u_min > 0.0 && options.u_min < 0.5 * theta2)) {
        throw Error(ErrorCode::Domain, "u_min must lie in (0, theta2/2)");
    }

    const double u_split = 0.5 * theta2;
    // 2 [F(theta2) - F(theta)], evaluated so that it stays accurate at both ends.
    auto energy = [&](double theta) {
        if (theta >= u_split) return 2.0 * spec.integral(theta, theta2);
        return -2.0 * spec.potential(theta);
    };

    StationaryProfile profile;
    profile.theta2 = theta2;
    auto push = [&](double x, double u, double uprime) {
        profile.xs.push_back(x);
        profile.us.push_back(u);
        profile.uprimes.push_back(uprime);
        profile.useconds.push_back(-spec.eval(clamp_unit(u)));
    };

    // Crest: theta = theta2 - s^2, dx = 2 s ds / sqrt(energy).
    const double crest_limit = 2.0 / std::sqrt(2.0 * f_crest);
    auto crest_integrand = [&](double s) {
        if (s <= 0.0) return crest_limit;
        const double e = energy(theta2 - s * s);
        return e > 0.0 ? 2.0 * s / std::sqrt(e) : crest_limit;
    };
    const double s_max = std::sqrt(theta2 - u_split);
    push(0.0, theta2, 0.0);
    double x = 0.0;
    for (int i = 1; i <= options.crest_nodes; ++i) {
        const double s0 = s_max * (i - 1) / options.crest_nodes;
        const double s1 = s_max * i / options.crest_nodes;
        x += integrate(crest_integrand, s0, s1, options.quad_tol);
        const double u = theta2 - s1 * s1;
        push(x, u, -std::sqrt(energy(u)));
    }

    // Tail: theta = exp(w), dx = exp(w) dw / sqrt(energy).
    auto tail_integrand = [&](double w) {
        const double u = std::exp(w);
        return u / std::sqrt(energy(u));
    };
    const double w_top = std::log(profile.us.back());
    const double w_bottom = std::log(options.u_min);
    for (int i = 1; i <= options.tail_nodes; ++i) {
        const double w0 = w_top + (w_bottom - w_top) * (i - 1) / options.tail_nodes;
        const double w1 = w_top + (w_bottom - w_top) * i / options.tail_nodes;
        x += integrate(tail_integrand, w1, w0, options.quad_tol);
        const double u = std::exp(w1);
        push(x, u, -std::sqrt(energy(u)));
    }
    profile.tail_rate = -profile.uprimes.back() / profile.us.back();
    return profile;
}

double residual(const StationaryProfile& profile, const Nonlinearity& spec, double spacing) {
    if (profile.size() < 100) {
        throw Error(ErrorCode::Resolution, "residual needs a profile with at least 100 points");
    }
    const double h = spacing;
    const int n = static_cast<int>(std::floor(profile.xs.back() / h)) - 1;
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double x = k * h;
        const double um = profile.value(x - h);
        const double u0 = profile.value(x);
        const double up = profile.value(x + h);
        const double r = (um - 2.0 * u0 + up) / (h * h) + spec.eval(clamp_unit(u0));
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double energy_defect(const StationaryProfile& profile, const Nonlinearity& spec) {
    double worst = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double lhs = spec.integral(clamp_unit(profile.us[i]), profile.theta2);
        const double rhs = 0.5 * profile.uprimes[i] * profile.uprimes[i];
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

BellShapeReport bell_shape_check(const StationaryProfile& profile, const Nonlinearity& spec,
                                 double spacing) {
    BellShapeReport report;
    report.resolution = spacing;
    const double theta0 = spec.ignition_temperature();
    const int n = static_cast<int>(std::floor(profile.xs.back() / spacing));

    report.strictly_decreasing = true;
    for (std::size_t i = 1; i < profile.size(); ++i) {
        if (!(profile.uprimes[i] < 0.0) || !(profile.us[i] < profile.us[i - 1])) {
            report.strictly_decreasing = false;
        }
    }
    std::vector<double> du(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
        du[static_cast<std::size_t>(k)] = profile.derivative(k * spacing);
        if (k > 0 && !(du[static_cast<std::size_t>(k)] < 0.0)) report.strictly_decreasing = false;
    }
    if (!report.strictly_decreasing) report.violations.push_back("U' not negative on (0, inf)");

    // Inflection: U'' = (second difference) changes sign from negative to positive.
    bool found = false;
    double prev = 0.0;
    for (int k = 1; k < n; ++k) {
        const double x = k * spacing;
        const double d2 = profile.value(x - spacing) - 2.0 * profile.value(x) +
                          profile.value(x + spacing);
        if (k > 1 && prev < 0.0 && d2 >= 0.0) {
            const double w = prev / (prev - d2);
            report.inflection_x = x - spacing + w * spacing;
            report.inflection_u = profile.value(report.inflection_x);
            found = true;
            break;
        }
        prev = d2;
    }
    if (!found) report.violations.push_back("no inflection point found");

    // U^{-1}(theta0) by bisection on the interpolant.
    if (theta0 > profile.us.back() && theta0 < profile.theta2) {
        double lo = 0.0;
        double hi = profile.xs.back();
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            const double mid = 0.5 * (lo + hi);
            (profile.value(mid) > theta0 ? lo : hi) = mid;
        }
        report.expected_x = 0.5 * (lo + hi);
    }
    const bool inflection_ok = found && std::abs(report.inflection_x - report.expected_x) <= spacing;
    if (found && !inflection_ok) report.violations.push_back("inflection not at U = theta0");

    // U' decreasing before the inflection, increasing after it.
    report.derivative_monotone_sides = found;
    for (int k = 1; k <= n && found; ++k) {
        const double x = k * spacing;
        const double change = du[static_cast<std::size_t>(k)] - du[static_cast<std::size_t>(k - 1)];
        if (x <= report.inflection_x - spacing && change > 1e-12) report.derivative_monotone_sides = false;
        if (x - spacing >= report.inflection_x + spacing && change < -1e-12)
            report.derivative_monotone_sides = false;
    }
    if (!report.derivative_monotone_sides) report.violations.push_back("U' not unimodal");

    report.tail_ratio = profile.uprimes.back() / profile.us.back();
    const double decay = spec.slope(0.0);
    report.tail_expected = decay < 0.0 ? -std::sqrt(-decay) : 0.0;
    const bool tail_ok = decay < 0.0 &&
                         std::abs(report.tail_ratio - report.tail_expected) <= 1e-2 * std::abs(report.tail_expected);
    if (!tail_ok) report.violations.push_back("tail decay rate differs from linearization");

    report.ok = report.strictly_decreasing && inflection_ok && report.derivative_monotone_sides && tail_ok;
    return report;
}

}  // namespace sharpfront
