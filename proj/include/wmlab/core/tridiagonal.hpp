#pragma once

#include <span>
#include <vector>

namespace wmlab {

// Solves (diag + off) x = rhs for a symmetric tridiagonal matrix with
// off-diagonal `off` (size n-1). Thomas algorithm without pivoting; the
// matrices used here are diagonally dominant.
std::vector<double> solve_tridiagonal(std::span<const double> diag, std::span<const double> off,
                                      std::span<const double> rhs);

// General (nonsymmetric) tridiagonal solve: lower[i] couples row i+1 to x[i],
// upper[i] couples row i to x[i+1] (both size n-1).
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

// Periodic (cyclic) tridiagonal solve via Sherman-Morrison.
std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower,
                                             std::span<const double> diag,
                                             std::span<const double> upper,
                                             std::span<const double> rhs);

}  // namespace wmlab
