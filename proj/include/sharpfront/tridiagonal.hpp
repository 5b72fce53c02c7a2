#pragma once

#include <span>
#include <vector>

namespace sharpfront {

/// Tridiagonal system lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i],
/// factored once by the Thomas algorithm (no pivoting; the matrices used here
/// are strictly diagonally dominant M-matrices).
class TridiagonalSystem {
public:
    TridiagonalSystem() = default;
    TridiagonalSystem(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper);

    std::size_t size() const { return inv_pivot_.size(); }

    /// Overwrites rhs with the solution.
    void solve_in_place(std::span<double> rhs) const;

private:
    std::vector<double> lower_scaled_;  // lower[i] / pivot[i]
    std::vector<double> upper_mod_;
    std::vector<double> inv_pivot_;
};

}  // namespace sharpfront
