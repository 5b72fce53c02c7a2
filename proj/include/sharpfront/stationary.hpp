#pragma once

#include "sharpfront/nonlinearity.hpp"

#include <string>
#include <vector>

namespace sharpfront {

/// Even, positive, decaying solution of 0 = U'' + f(U) with U(0) = theta2,
/// tabulated on x >= 0. Beyond the table, U decays like exp(-tail_rate x).
struct StationaryProfile {
    double theta2 = 0.0;
    std::vector<double> xs;       // increasing, xs[0] = 0
    std::vector<double> us;       // U(xs[i])
    std::vector<double> uprimes;  // U'(xs[i]) <= 0
    std::vector<double> useconds; // U''(xs[i]) = -f(U)
    double tail_rate = 0.0;

    /// U(x) by quintic Hermite interpolation, mirrored for x < 0.
    double value(double x) const;
    /// U'(x); odd in x.
    double derivative(double x) const;
    std::size_t size() const { return xs.size(); }
};

struct BumpOptions {
    double u_min = 1e-6;
    double quad_tol = 1e-12;
    int crest_nodes = 400;   // uniform in s = sqrt(theta2 - U)
    int tail_nodes = 2000;   // uniform in log U
};

/// Inverts x(U) = int_U^theta2 dtheta / sqrt(2 [F(theta2) - F(theta)]).
/// Near the crest the substitution theta = theta2 - s^2 removes the inverse
/// square-root endpoint singularity; below theta2/2 the integral is taken in
/// log U so the logarithmic growth as U -> 0 stays resolved.
StationaryProfile solve_bump(const Nonlinearity& spec, const BumpOptions& options = {});

/// sup |U'' + f(U)| from centered second differences on a uniform resampling.
double residual(const StationaryProfile& profile, const Nonlinearity& spec, double spacing = 0.01);

/// max_i |int_{U_i}^{theta2} f - U'_i^2 / 2| over the table.
double energy_defect(const StationaryProfile& profile, const Nonlinearity& spec);

struct BellShapeReport {
    bool strictly_decreasing = false;      // U' < 0 on the sampled x > 0
    bool derivative_monotone_sides = false;
    double inflection_x = 0.0;             // sign change of U''
    double inflection_u = 0.0;
    double expected_x = 0.0;               // U^{-1}(theta0)
    double resolution = 0.0;
    double tail_ratio = 0.0;               // U'/U at the end of the table
    double tail_expected = 0.0;            // -sqrt(-f'(0))
    bool ok = false;
    std::vector<std::string> violations;
};

BellShapeReport bell_shape_check(const StationaryProfile& profile, const Nonlinearity& spec,
                                 double spacing = 0.01);

}  // namespace sharpfront
