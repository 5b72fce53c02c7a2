#pragma once

#include "sharpfront/nonlinearity.hpp"
#include "sharpfront/solver.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace sharpfront {

/// max_j (u_j - v_j); <= 0 when u <= v nodewise.
double order_violation(const Field& u, const Field& v);

/// max_j |T_j - T_{n-j}|.
double symmetry_defect(const Field& field);

/// Distance of the values from [0, 1]; 0 when in range.
double range_defect(const Field& field);

/// Largest increase of T when moving outward from x = 0 (0 for profiles
/// non-increasing in |x|).
double radial_monotone_defect(const Field& field);

struct TurnCount {
    int decrease_to_increase = 0;
    int increase_to_decrease = 0;
};

/// Direction changes in a series, ignoring steps of size <= dead_band.
TurnCount count_turns(const std::vector<double>& series, double dead_band);

/// Independent uniform values u_j and v_j = u_j + w_j (1 - u_j), so u <= v.
std::pair<Field, Field> random_ordered_pair(const Grid& grid, std::mt19937_64& rng);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Property suite on one spec: f(0) = f(1) = 0, Lipschitz bound, potential as
/// antiderivative, amplitude linearity, theta2 balance (bistable), and the
/// comparison, symmetry, range and indicator-monotonicity properties of the scheme.
std::vector<CheckResult> run_invariant_suite(const Nonlinearity& spec, const Grid& grid,
                                             const SimParams& params, std::uint64_t seed = 1);

}  // namespace sharpfront
