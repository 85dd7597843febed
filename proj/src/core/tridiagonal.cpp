#include "wmlab/core/tridiagonal.hpp"

#include <cassert>

#include "wmlab/core/error.hpp"

namespace wmlab {

std::vector<double> solve_tridiagonal(std::span<const double> diag, std::span<const double> off,
                                      std::span<const double> rhs) {
  return solve_tridiagonal(off, diag, off, rhs);
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  assert(rhs.size() == n && lower.size() + 1 >= n && upper.size() + 1 >= n);
  std::vector<double> c(n, 0.0), x(rhs.begin(), rhs.end());
  if (n == 0) return x;
  double denom = diag[0];
  if (denom == 0.0) throw ConvergenceError("singular tridiagonal system");
  if (n > 1) c[0] = upper[0] / denom;
  x[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - lower[i - 1] * c[i - 1];
    if (denom == 0.0) throw ConvergenceError("singular tridiagonal system");
    if (i + 1 < n) c[i] = upper[i] / denom;
    x[i] = (x[i] - lower[i - 1] * x[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

std::vector<double> solve_cyclic_tridiagonal(std::span<const double> lower,
                                             std::span<const double> diag,
                                             std::span<const double> upper,
                                             std::span<const double> rhs) {
  // lower[i] couples row i to i-1 (cyclically), upper[i] row i to i+1.
  const std::size_t n = diag.size();
  if (n < 3) throw ModelError("cyclic tridiagonal system needs at least 3 unknowns");
  const double alpha = upper[n - 1];  // row n-1 -> column 0
  const double beta = lower[0];       // row 0 -> column n-1
  const double gamma = -diag[0];
  std::vector<double> b(diag.begin(), diag.end());
  b[0] -= gamma;
  b[n - 1] -= alpha * beta / gamma;
  std::vector<double> lo(lower.begin() + 1, lower.end());
  std::vector<double> up(upper.begin(), upper.end() - 1);
  std::vector<double> x = solve_tridiagonal(lo, b, up, rhs);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  std::vector<double> z = solve_tridiagonal(lo, b, up, u);
  const double fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

}  // namespace wmlab
