#include "sharpfront/tridiagonal.hpp"

#include "sharpfront/error.hpp"

#include <cmath>

namespace sharpfront {

TridiagonalSystem::TridiagonalSystem(std::vector<double> lower, std::vector<double> diag,
                                     std::vector<double> upper)
    : lower_scaled_(diag.size()), upper_mod_(diag.size()), inv_pivot_(diag.size()) {
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n) {
        throw Error(ErrorCode::NumericalFault, "tridiagonal bands must have equal length");
    }
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pivot = diag[i] - (i > 0 ? lower[i] * prev : 0.0);
        if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) {
            throw Error(ErrorCode::NumericalFault, "zero pivot in tridiagonal factorization");
        }
        inv_pivot_[i] = 1.0 / pivot;
        lower_scaled_[i] = lower[i] * inv_pivot_[i];
        upper_mod_[i] = upper[i] * inv_pivot_[i];
        prev = upper_mod_[i];
    }
}

void TridiagonalSystem::solve_in_place(std::span<double> rhs) const {
    const std::size_t n = inv_pivot_.size();
    if (n == 0) return;
    rhs[0] *= inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i) {
        // One dependent multiply-add per row keeps the sweep latency low.
        rhs[i] = rhs[i] * inv_pivot_[i] - lower_scaled_[i] * rhs[i - 1];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] -= upper_mod_[i] * rhs[i + 1];
    }
}

}  // namespace sharpfront
