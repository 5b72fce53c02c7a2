#pragma once

#include "sharpfront/nonlinearity.hpp"

#include <vector>

namespace sharpfront {

/// Travelling front phi(x - v t) with phi(-inf) = 1, phi(+inf) = 0.
/// v > 0 means the state 1 invades the state 0.
struct FrontSolution {
    double speed = 0.0;
    std::vector<double> xis;   // uniform, phi(0) = 1/2
    std::vector<double> phis;  // strictly decreasing
    /// |psi| mismatch at phi = 1/2 between the orbit leaving (1,0) and the
    /// orbit entering (0,0).
    double shoot_residual = 0.0;
    int iterations = 0;
    double bracket_width = 0.0;
};

struct FrontOptions {
    double step = 1e-3;          // RK4 step in xi
    double launch = 1e-8;        // distance from the saddle along its eigenvector
    double max_length = 1000.0;  // xi budget per shot
    double table_spacing = 1e-2;
    double tail_cutoff = 1e-6;   // table spans phi in [cutoff, 1 - cutoff]
};

enum class ShotOutcome { Overshoot, Undershoot };

/// Classifies one shot from the unstable direction of (1, 0) at speed v:
/// overshoot if psi returns to 0 with phi > 0, undershoot if phi reaches 0.
ShotOutcome shoot(const Nonlinearity& spec, double v, const FrontOptions& options = {});

/// Bisection on v over [-2 sqrt(c), 2 sqrt(c)] until the bracket is below `tol`.
FrontSolution front_speed(const Nonlinearity& spec, double tol, const FrontOptions& options = {});

/// sup |phi'' + v phi' + f(phi)| over the interior of the table (centered differences).
double profile_residual(const FrontSolution& front, const Nonlinearity& spec);

}  // namespace sharpfront
