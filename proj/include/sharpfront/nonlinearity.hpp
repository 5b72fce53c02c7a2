#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sharpfront {

/// Sign structure of f on (0,1), as detected from dense sampling.
enum class SignPattern {
    Zero,              // f vanishes identically (amplitude 0)
    IgnitionPlateau,   // f = 0 on [0, theta0], f > 0 on (theta0, 1)
    PositiveInterior,  // f > 0 on (0, 1)
    Bistable,          // f < 0 on (0, theta0), f > 0 on (theta0, 1)
    Irregular,
};

std::string to_string(SignPattern pattern);

/// f(theta) = (theta - theta0)(1 - theta) above theta0, zero below.
struct Ignition {
    double theta0 = 0.3;
    bool operator==(const Ignition&) const = default;
};

enum class KppForm { Logistic, Power };

/// Logistic theta(1 - theta), or power-combustion theta^p (1 - theta).
struct Kpp {
    KppForm form = KppForm::Logistic;
    double p = 1.0;
    bool operator==(const Kpp&) const = default;
};

/// exp(-A/theta)(1 - theta), extended by 0 at theta = 0.
struct Arrhenius {
    double activation = 1.0;
    bool operator==(const Arrhenius&) const = default;
};

/// theta (theta - a)(1 - theta). a in (0, 1); the integral of f is positive iff a < 1/2.
struct BistableCubic {
    double a = 0.25;
    bool operator==(const BistableCubic&) const = default;
};

/// Piecewise-linear f through (thetas[i], values[i]); `declared` is the class
/// the table is claimed to belong to and is verified on construction.
struct Tabulated {
    std::vector<double> thetas;
    std::vector<double> values;
    SignPattern declared = SignPattern::Bistable;
    bool operator==(const Tabulated&) const = default;
};

using NonlinearityKind = std::variant<Ignition, Kpp, Arrhenius, BistableCubic, Tabulated>;

struct SignReport {
    SignPattern pattern = SignPattern::Irregular;
    double threshold = 0.0;  // plateau end / zero crossing (0 when none)
    std::string description;
    bool matches_kind = false;
};

/// Reaction term amplitude * f_kind(theta) on [0, 1].
///
/// Immutable after construction. The constructor validates parameter ranges
/// and the sign pattern of the sampled f against the declared kind.
class Nonlinearity {
public:
    explicit Nonlinearity(NonlinearityKind kind, double amplitude = 1.0);

    static Nonlinearity ignition(double theta0, double amplitude = 1.0);
    static Nonlinearity logistic(double amplitude = 1.0);
    static Nonlinearity power(double p, double amplitude = 1.0);
    static Nonlinearity arrhenius(double activation, double amplitude = 1.0);
    static Nonlinearity bistable(double a, double amplitude = 1.0);
    static Nonlinearity tabulated(std::vector<double> thetas, std::vector<double> values,
                                  SignPattern declared, double amplitude = 1.0);

    const NonlinearityKind& kind() const { return kind_; }
    double amplitude() const { return amplitude_; }
    std::string kind_name() const;

    /// Same kind, amplitude multiplied by `factor`.
    Nonlinearity scaled(double factor) const;

    /// amplitude * f(theta); throws ErrorCode::Domain outside [0, 1].
    double eval(double theta) const;
    double operator()(double theta) const { return eval(theta); }

    /// eval() without the range check, for inner loops on data already in [0, 1].
    double eval_unchecked(double theta) const { return amplitude_ * shape(theta); }

    /// Explicit reaction substep on values in [0, 1]: v <- clamp(v + dt f(v), 0, 1).
    void react(std::span<double> values, double dt) const;

    /// F(theta) = integral of f over [0, theta].
    double potential(double theta) const;

    /// Integral of f over [lo, hi]; accurate relative to the interval length,
    /// unlike a difference of two potential() values.
    double integral(double lo, double hi) const;

    /// Zero of F in (theta0, 1); ErrorCode::UnsupportedKind if F does not change sign there.
    double theta2() const;

    /// max(sup |f'|, sup |f|) over [0, 1].
    double lipschitz_constant() const;

    /// End of the zero plateau (ignition), the interior zero (bistable), or 0.
    double ignition_temperature() const;

    /// Width delta such that f is non-decreasing on [theta0, theta0 + delta].
    double monotone_margin() const;

    /// Sampled derivative; one-sided at the end points.
    double slope(double theta) const;

    SignReport check_sign_pattern() const;

    bool operator==(const Nonlinearity& other) const = default;

private:
    double shape(double theta) const;
    double shape_potential(double theta) const;
    double shape_lipschitz() const;
    double shape_integral(double lo, double hi) const;
    void validate_parameters() const;

    NonlinearityKind kind_;
    double amplitude_ = 1.0;
};

}  // namespace sharpfront
