#include "sharpfront/nonlinearity.hpp"

#include "sharpfront/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace sharpfront {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kQuadTol = 1e-12;
constexpr double kArrheniusCutoff = 1e-8;
constexpr int kSignSamples = 10000;

// 5-point Gauss-Legendre, exact for polynomials of degree <= 9.
double gauss_legendre5(double lo, double hi, auto&& f) {
    static constexpr std::array<double, 5> nodes = {
        -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
    static constexpr std::array<double, 5> weights = {
        0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
        0.2369268850561891};
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return sum * half;
}

double adaptive_integral(double lo, double hi, auto&& f) {
    if (hi <= lo) return 0.0;
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, lo, hi, 20, 1e-14, &err);
    if (!(err <= kQuadTol)) {
        throw Error(ErrorCode::NumericalFault, "quadrature did not reach 1e-12 absolute accuracy");
    }
    return value;
}

std::string format_level(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", value);
    return buf;
}

// Piecewise-linear evaluation on a validated table.
double table_value(const Tabulated& t, double theta) {
    const auto it = std::upper_bound(t.thetas.begin(), t.thetas.end(), theta);
    if (it == t.thetas.end()) return t.values.back();
    const auto i = static_cast<std::size_t>(it - t.thetas.begin());
    if (i == 0) return t.values.front();
    const double w = (theta - t.thetas[i - 1]) / (t.thetas[i] - t.thetas[i - 1]);
    return t.values[i - 1] + w * (t.values[i] - t.values[i - 1]);
}

// Exact integral of the piecewise-linear table over [lo, hi].
double table_integral(const Tabulated& t, double lo, double hi) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < t.thetas.size(); ++i) {
        const double a = std::max(lo, t.thetas[i]);
        const double b = std::min(hi, t.thetas[i + 1]);
        if (b <= a) continue;
        sum += 0.5 * (b - a) * (table_value(t, a) + table_value(t, b));
    }
    return sum;
}

struct Run {
    int sign;
    int first;
    int last;
};

}  // namespace

std::string to_string(SignPattern pattern) {
    switch (pattern) {
        case SignPattern::Zero: return "zero";
        case SignPattern::IgnitionPlateau: return "ignition";
        case SignPattern::PositiveInterior: return "combustion";
        case SignPattern::Bistable: return "bistable";
        case SignPattern::Irregular: return "irregular";
    }
    return "irregular";
}

Nonlinearity::Nonlinearity(NonlinearityKind kind, double amplitude)
    : kind_(std::move(kind)), amplitude_(amplitude) {
    validate_parameters();
    if (amplitude_ > 0.0) {
        const SignReport report = check_sign_pattern();
        if (!report.matches_kind) {
            throw Error(ErrorCode::Validation, "sampled sign pattern (" + report.description +
                                                   ") does not match declared kind " + kind_name());
        }
    }
}

Nonlinearity Nonlinearity::ignition(double theta0, double amplitude) {
    return Nonlinearity(Ignition{theta0}, amplitude);
}
Nonlinearity Nonlinearity::logistic(double amplitude) {
    return Nonlinearity(Kpp{KppForm::Logistic, 1.0}, amplitude);
}
Nonlinearity Nonlinearity::power(double p, double amplitude) {
    return Nonlinearity(Kpp{KppForm::Power, p}, amplitude);
}
Nonlinearity Nonlinearity::arrhenius(double activation, double amplitude) {
    return Nonlinearity(Arrhenius{activation}, amplitude);
}
Nonlinearity Nonlinearity::bistable(double a, double amplitude) {
    return Nonlinearity(BistableCubic{a}, amplitude);
}
Nonlinearity Nonlinearity::tabulated(std::vector<double> thetas, std::vector<double> values,
                                     SignPattern declared, double amplitude) {
    return Nonlinearity(Tabulated{std::move(thetas), std::move(values), declared}, amplitude);
}

std::string Nonlinearity::kind_name() const {
    return std::visit(Overloaded{
                          [](const Ignition&) { return std::string("ignition"); },
                          [](const Kpp&) { return std::string("kpp"); },
                          [](const Arrhenius&) { return std::string("arrhenius"); },
                          [](const BistableCubic&) { return std::string("bistable_cubic"); },
                          [](const Tabulated&) { return std::string("tabulated"); },
                      },
                      kind_);
}

Nonlinearity Nonlinearity::scaled(double factor) const {
    return Nonlinearity(kind_, amplitude_ * factor);
}

void Nonlinearity::validate_parameters() const {
    if (!std::isfinite(amplitude_) || amplitude_ < 0.0) {
        throw Error(ErrorCode::Domain, "amplitude must be finite and non-negative");
    }
    std::visit(Overloaded{
                   [](const Ignition& k) {
                       if (!(k.theta0 > 0.0 && k.theta0 < 1.0))
                           throw Error(ErrorCode::Domain, "ignition theta0 must lie in (0,1)");
                   },
                   [](const Kpp& k) {
                       if (k.form == KppForm::Power && !(k.p >= 1.0 && std::isfinite(k.p)))
                           throw Error(ErrorCode::Domain, "power exponent p must be >= 1");
                   },
                   [](const Arrhenius& k) {
                       if (!(k.activation > 0.0 && std::isfinite(k.activation)))
                           throw Error(ErrorCode::Domain, "activation energy A must be > 0");
                   },
                   [](const BistableCubic& k) {
                       if (!(k.a > 0.0 && k.a < 1.0))
                           throw Error(ErrorCode::Domain, "bistable a must lie in (0,1)");
                   },
                   [](const Tabulated& t) {
                       if (t.thetas.size() < 2 || t.thetas.size() != t.values.size())
                           throw Error(ErrorCode::Validation,
                                       "table needs >= 2 (theta, f) pairs of equal length");
                       if (t.thetas.front() != 0.0 || t.thetas.back() != 1.0)
                           throw Error(ErrorCode::Validation, "table must span [0,1]");
                       if (t.values.front() != 0.0 || t.values.back() != 0.0)
                           throw Error(ErrorCode::Validation, "table must have f(0)=f(1)=0");
                       for (std::size_t i = 0; i < t.thetas.size(); ++i) {
                           if (!std::isfinite(t.thetas[i]) || !std::isfinite(t.values[i]))
                               throw Error(ErrorCode::Validation, "table entries must be finite");
                           if (i > 0 && !(t.thetas[i] > t.thetas[i - 1]))
                               throw Error(ErrorCode::Validation,
                                           "table thetas must be strictly increasing");
                       }
                       if (t.declared == SignPattern::Irregular)
                           throw Error(ErrorCode::Validation, "table cannot be declared irregular");
                   },
               },
               kind_);
}

namespace {

double shape_of(const Ignition& k, double theta) {
    return theta <= k.theta0 ? 0.0 : (theta - k.theta0) * (1.0 - theta);
}

double shape_of(const Kpp& k, double theta) {
    if (k.form == KppForm::Logistic) return theta * (1.0 - theta);
    return std::pow(theta, k.p) * (1.0 - theta);
}

double shape_of(const Arrhenius& k, double theta) {
    if (theta < kArrheniusCutoff) return 0.0;
    return std::exp(-k.activation / theta) * (1.0 - theta);
}

double shape_of(const BistableCubic& k, double theta) { return theta * (theta - k.a) * (1.0 - theta); }

double shape_of(const Tabulated& t, double theta) { return table_value(t, theta); }

}  // namespace

double Nonlinearity::shape(double theta) const {
    return std::visit([theta](const auto& k) { return shape_of(k, theta); }, kind_);
}

void Nonlinearity::react(std::span<double> values, double dt) const {
    const double scale = dt * amplitude_;
    std::visit(
        [&](const auto& k) {
            for (double& v : values) v = std::clamp(v + scale * shape_of(k, v), 0.0, 1.0);
        },
        kind_);
}

double Nonlinearity::eval(double theta) const {
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw Error(ErrorCode::Domain, "eval_f: theta outside [0,1]");
    }
    return amplitude_ * shape(theta);
}

double Nonlinearity::shape_potential(double theta) const {
    return std::visit(
        Overloaded{
            [theta](const Ignition& k) {
                if (theta <= k.theta0) return 0.0;
                const double d = theta - k.theta0;
                return (1.0 - k.theta0) * d * d / 2.0 - d * d * d / 3.0;
            },
            [theta](const Kpp& k) {
                const double p = k.form == KppForm::Logistic ? 1.0 : k.p;
                return std::pow(theta, p + 1.0) / (p + 1.0) - std::pow(theta, p + 2.0) / (p + 2.0);
            },
            [this, theta](const Arrhenius&) {
                return adaptive_integral(0.0, theta, [this](double s) { return shape(s); });
            },
            [theta](const BistableCubic& k) {
                const double t2 = theta * theta;
                return t2 * (-t2 / 4.0 + (1.0 + k.a) * theta / 3.0 - k.a / 2.0);
            },
            [theta](const Tabulated& t) { return table_integral(t, 0.0, theta); },
        },
        kind_);
}

double Nonlinearity::potential(double theta) const {
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw Error(ErrorCode::Domain, "potential: theta outside [0,1]");
    }
    return amplitude_ * shape_potential(theta);
}

double Nonlinearity::shape_integral(double lo, double hi) const {
    auto f = [this](double s) { return shape(s); };
    return std::visit(
        Overloaded{
            [&](const Ignition& k) {
                const double a = std::max(lo, k.theta0);
                return hi > a ? gauss_legendre5(a, hi, f) : 0.0;
            },
            [&](const Kpp& k) {
                if (k.form == KppForm::Logistic || (k.p == std::floor(k.p) && k.p <= 8.0))
                    return gauss_legendre5(lo, hi, f);
                return adaptive_integral(lo, hi, f);
            },
            [&](const Arrhenius&) { return adaptive_integral(lo, hi, f); },
            [&](const BistableCubic&) { return gauss_legendre5(lo, hi, f); },
            [&](const Tabulated& t) { return table_integral(t, lo, hi); },
        },
        kind_);
}

double Nonlinearity::integral(double lo, double hi) const {
    if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) {
        throw Error(ErrorCode::Domain, "integral: need 0 <= lo <= hi <= 1");
    }
    return amplitude_ * shape_integral(lo, hi);
}

double Nonlinearity::ignition_temperature() const {
    return std::visit(Overloaded{
                          [](const Ignition& k) { return k.theta0; },
                          [](const Kpp&) { return 0.0; },
                          [](const Arrhenius&) { return 0.0; },
                          [](const BistableCubic& k) { return k.a; },
                          [](const Tabulated& t) {
                              const auto& v = t.values;
                              std::size_t i = 1;
                              if (t.declared == SignPattern::IgnitionPlateau) {
                                  while (i + 1 < v.size() && v[i] == 0.0) ++i;
                                  return t.thetas[i - 1];
                              }
                              if (t.declared == SignPattern::Bistable) {
                                  while (i < v.size() && v[i] < 0.0) ++i;
                                  if (i >= v.size() || v[i] == 0.0) return t.thetas[std::min(i, v.size() - 1)];
                                  const double w = -v[i - 1] / (v[i] - v[i - 1]);
                                  return t.thetas[i - 1] + w * (t.thetas[i] - t.thetas[i - 1]);
                              }
                              return 0.0;
                          },
                      },
                      kind_);
}

double Nonlinearity::theta2() const {
    const SignReport report = check_sign_pattern();
    if (report.pattern != SignPattern::Bistable) {
        throw Error(ErrorCode::UnsupportedKind,
                    "theta2 requires a bistable nonlinearity (F >= 0 everywhere otherwise)");
    }
    if (!(shape_potential(1.0) > 0.0)) {
        throw Error(ErrorCode::UnsupportedKind,
                    "theta2 requires integral of f over [0,1] to be positive");
    }
    const double lower = ignition_temperature();

    if (const auto* t = std::get_if<Tabulated>(&kind_)) {
        // F is piecewise quadratic: find the segment where it turns positive and solve exactly.
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < t->thetas.size(); ++i) {
            const double t0 = t->thetas[i];
            const double t1 = t->thetas[i + 1];
            const double f0 = t->values[i];
            const double f1 = t->values[i + 1];
            const double next = acc + 0.5 * (t1 - t0) * (f0 + f1);
            if (t1 > lower && acc <= 0.0 && next > 0.0) {
                const double m = (f1 - f0) / (t1 - t0);
                const double disc = std::sqrt(std::max(0.0, f0 * f0 - 2.0 * m * acc));
                const double denom = f0 + disc;
                const double d = denom > 0.0 ? -2.0 * acc / denom : 0.0;
                return t0 + d;
            }
            acc = next;
        }
        throw Error(ErrorCode::UnsupportedKind, "tabulated potential has no positive crossing");
    }

    // F < 0 at the interior zero of f and F(1) > 0; F is increasing in between.
    double lo = lower;
    double hi = 1.0;
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (shape_potential(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double Nonlinearity::shape_lipschitz() const {
    return std::visit(
        Overloaded{
            [](const Ignition& k) {
                const double slope = 1.0 - k.theta0;
                return std::max(slope, slope * slope / 4.0);
            },
            [](const Kpp& k) {
                if (k.form == KppForm::Logistic) return 1.0;
                const double p = k.p;
                double best = 1.0;  // |f'(1)| = 1
                if (p > 1.0) {
                    const double c = (p - 1.0) / (p + 1.0);
                    best = std::max(best, std::abs(p * std::pow(c, p - 1.0) -
                                                   (p + 1.0) * std::pow(c, p)));
                }
                const double peak = p / (p + 1.0);
                return std::max(best, std::pow(peak, p) * (1.0 - peak));
            },
            [this](const Arrhenius&) {
                constexpr int n = 20000;
                double best_slope = 0.0;
                double best_value = 0.0;
                double prev = shape(0.0);
                for (int i = 1; i <= n; ++i) {
                    const double cur = shape(static_cast<double>(i) / n);
                    best_slope = std::max(best_slope, std::abs(cur - prev) * n);
                    best_value = std::max(best_value, std::abs(cur));
                    prev = cur;
                }
                // secant slopes under-estimate sup|f'|; inflate by 2%
                return 1.02 * std::max(best_slope, best_value);
            },
            [](const BistableCubic& k) {
                const double a = k.a;
                auto df = [a](double t) { return -3.0 * t * t + 2.0 * (1.0 + a) * t - a; };
                auto f = [a](double t) { return t * (t - a) * (1.0 - t); };
                double best = std::max({std::abs(df(0.0)), std::abs(df(1.0)),
                                        std::abs(df((1.0 + a) / 3.0))});
                const double disc = std::sqrt((1.0 + a) * (1.0 + a) - 3.0 * a);
                for (double r : {((1.0 + a) - disc) / 3.0, ((1.0 + a) + disc) / 3.0}) {
                    best = std::max(best, std::abs(f(r)));
                }
                return best;
            },
            [](const Tabulated& t) {
                double best = 0.0;
                for (std::size_t i = 0; i < t.thetas.size(); ++i) {
                    best = std::max(best, std::abs(t.values[i]));
                    if (i + 1 < t.thetas.size()) {
                        best = std::max(best, std::abs((t.values[i + 1] - t.values[i]) /
                                                       (t.thetas[i + 1] - t.thetas[i])));
                    }
                }
                return best;
            },
        },
        kind_);
}

double Nonlinearity::lipschitz_constant() const {
    if (amplitude_ == 0.0) return 0.0;
    return amplitude_ * shape_lipschitz();
}

double Nonlinearity::monotone_margin() const {
    if (const auto* k = std::get_if<Ignition>(&kind_)) return (1.0 - k->theta0) / 2.0;
    const double start = ignition_temperature();
    constexpr int n = 10000;
    double prev = shape(start);
    for (int i = 1; i <= n; ++i) {
        const double theta = start + (1.0 - start) * i / n;
        const double cur = shape(theta);
        if (cur < prev) return theta - (1.0 - start) / n - start;
        prev = cur;
    }
    return 1.0 - start;
}

double Nonlinearity::slope(double theta) const {
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw Error(ErrorCode::Domain, "slope: theta outside [0,1]");
    }
    constexpr double eta = 1e-6;
    if (theta < eta) return (eval(theta + eta) - eval(theta)) / eta;
    if (theta > 1.0 - eta) return (eval(theta) - eval(theta - eta)) / eta;
    return (eval(theta + eta) - eval(theta - eta)) / (2.0 * eta);
}

SignReport Nonlinearity::check_sign_pattern() const {
    std::vector<Run> runs;
    for (int i = 1; i < kSignSamples; ++i) {
        const double value = amplitude_ * shape(static_cast<double>(i) / kSignSamples);
        const int sign = (value > 0.0) - (value < 0.0);
        if (runs.empty() || runs.back().sign != sign) {
            runs.push_back({sign, i, i});
        } else {
            runs.back().last = i;
        }
    }
    auto signs_are = [&runs](std::initializer_list<int> expected) {
        return std::equal(runs.begin(), runs.end(), expected.begin(), expected.end(),
                          [](const Run& r, int s) { return r.sign == s; });
    };

    SignReport report;
    double detected = 0.0;
    if (signs_are({0})) {
        report.pattern = SignPattern::Zero;
    } else if (signs_are({1})) {
        report.pattern = SignPattern::PositiveInterior;
    } else if (signs_are({0, 1})) {
        report.pattern = SignPattern::IgnitionPlateau;
        detected = static_cast<double>(runs[0].last) / kSignSamples;
    } else if (signs_are({-1, 1}) || signs_are({-1, 0, 1})) {
        report.pattern = SignPattern::Bistable;
        detected = static_cast<double>(runs.back().first) / kSignSamples;
    } else {
        report.pattern = SignPattern::Irregular;
    }

    const double resolution = 1.5 / kSignSamples;
    const double exact = ignition_temperature();
    report.matches_kind = std::visit(
        Overloaded{
            [&](const Ignition& k) {
                return report.pattern == SignPattern::IgnitionPlateau &&
                       std::abs(detected - k.theta0) <= resolution;
            },
            [&](const Kpp&) {
                return report.pattern == SignPattern::PositiveInterior ||
                       report.pattern == SignPattern::IgnitionPlateau;
            },
            [&](const Arrhenius&) {
                return report.pattern == SignPattern::PositiveInterior ||
                       report.pattern == SignPattern::IgnitionPlateau;
            },
            [&](const BistableCubic& k) {
                return report.pattern == SignPattern::Bistable &&
                       std::abs(detected - k.a) <= resolution;
            },
            [&](const Tabulated& t) { return report.pattern == t.declared; },
        },
        kind_);
    if (report.pattern == SignPattern::Zero) report.matches_kind = true;

    const bool use_exact = report.matches_kind && exact > 0.0;
    report.threshold = use_exact ? exact : detected;
    const std::string level = format_level(report.threshold);
    switch (report.pattern) {
        case SignPattern::Zero: report.description = "identically zero"; break;
        case SignPattern::PositiveInterior: report.description = "positive on (0,1)"; break;
        case SignPattern::IgnitionPlateau:
            report.description = "zero on [0," + level + "], positive on (" + level + ",1)";
            break;
        case SignPattern::Bistable:
            report.description = "negative on (0," + level + "), positive on (" + level + ",1)";
            break;
        case SignPattern::Irregular: report.description = "irregular sign changes"; break;
    }
    return report;
}

}  // namespace sharpfront
