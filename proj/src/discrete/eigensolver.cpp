#include "wmlab/discrete/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wmlab/core/error.hpp"

namespace wmlab::discrete {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// LU factorization with partial pivoting of T - sigma I (LAPACK dgttrf layout).
struct TridiagonalLU {
  std::vector<double> dl, d, du, du2;
  std::vector<char> swapped;

  TridiagonalLU(std::span<const double> diag, std::span<const double> off, double sigma,
                double tiny) {
    const std::size_t n = diag.size();
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - sigma;
    dl.assign(off.begin(), off.end());
    du.assign(off.begin(), off.end());
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped.assign(n > 1 ? n - 1 : 0, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        const double fact = dl[i] / d[i];
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
      } else {
        const double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        swapped[i] = 1;
      }
    }
    for (double& x : d) {
      if (std::abs(x) < tiny) x = x < 0 ? -tiny : tiny;
    }
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) {
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
  }
};

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double residual(std::span<const double> d, std::span<const double> e, double lambda,
                const std::vector<double>& v) {
  const std::size_t n = d.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = (d[i] - lambda) * v[i];
    if (i > 0) y += e[i - 1] * v[i - 1];
    if (i + 1 < n) y += e[i] * v[i + 1];
    s += y * y;
  }
  return std::sqrt(s);
}

}  // namespace

std::size_t sturm_count(std::span<const double> d, std::span<const double> e, double x) {
  const double tiny = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = d[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (std::abs(q) < tiny) q = -tiny;
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

TridiagonalEigen tridiagonal_eigen(std::span<const double> d, std::span<const double> e,
                                   std::size_t k, bool vectors) {
  const std::size_t n = d.size();
  if (n == 0 || e.size() + 1 != n) throw ModelError("malformed tridiagonal matrix");
  if (k > n) throw ModelError("more eigenvalues requested than the matrix has");
  TridiagonalEigen out;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double rad = 0.0;
    if (i > 0) rad += std::abs(e[i - 1]);
    if (i + 1 < n) rad += std::abs(e[i]);
    lo = std::min(lo, d[i] - rad);
    hi = std::max(hi, d[i] + rad);
  }
  out.norm = std::max(std::abs(lo), std::abs(hi));
  const double pad = 2.0 * kEps * out.norm + std::numeric_limits<double>::min();
  lo -= pad;
  hi += pad;

  // Bisection for each index; intervals from earlier indices tighten later
  // starting brackets.
  out.values.resize(k);
  // Relative precision; the floor only bounds the work for eigenvalues at 0.
  const double floor_width = 1e-250;
  double left = lo;
  for (std::size_t j = 0; j < k; ++j) {
    double a = left, b = hi;
    while (true) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (b - a <= std::max(2.0 * kEps * std::max(std::abs(a), std::abs(b)), floor_width)) break;
      if (sturm_count(d, e, mid) > j) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out.values[j] = 0.5 * (a + b);
    left = a;
  }
  if (!vectors) return out;

  const double tol = 1e-10 * out.norm;
  const double tiny = kEps * out.norm;
  out.vectors.reserve(k);
  out.residuals.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double lambda = out.values[j];
    const TridiagonalLU lu(d, e, lambda, tiny);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Deterministic start with components in every direction.
      v[i] = 1.0 + 0.5 * std::sin(0.7548776662466927 * static_cast<double>(i + 1) +
                                  1.3247179572447460 * static_cast<double>(j + 1));
    }
    double res = std::numeric_limits<double>::infinity();
    int iterations = 0;
    for (; iterations < 8; ++iterations) {
      lu.solve(v);
      // Two Gram-Schmidt passes against every accepted vector.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& u : out.vectors) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += u[i] * v[i];
          for (std::size_t i = 0; i < n; ++i) v[i] -= dot * u[i];
        }
      }
      const double nv = norm2(v);
      if (!(nv > 0.0) || !std::isfinite(nv)) break;
      for (double& x : v) x /= nv;
      res = residual(d, e, lambda, v);
      if (iterations >= 1 && res <= tol) break;
    }
    if (!(res <= tol)) {
      std::ostringstream msg;
      msg << "inverse iteration for eigenvalue " << j << " (" << lambda << ") stalled after "
          << iterations << " iterations: residual " << res << " > " << tol;
      throw ConvergenceError(msg.str());
    }
    out.vectors.push_back(std::move(v));
    out.residuals.push_back(res);
  }
  return out;
}

EigenDecomposition eigen_solve(const SturmLiouvilleOp& op, std::size_t k, bool vectors) {
  if (k == 0) throw ModelError("eigen_solve needs k >= 1");
  if (4 * k > op.size()) {
    std::ostringstream msg;
    msg << "k = " << k << " exceeds the accuracy guard N/4 for N = " << op.size();
    throw ModelError(msg.str());
  }
  const TridiagonalEigen te = tridiagonal_eigen(op.diag, op.offdiag, k, vectors);
  EigenDecomposition dec;
  dec.eigenvalues = te.values;
  dec.residuals = te.residuals;
  dec.norm = te.norm;
  dec.mass = op.mass;
  dec.nodes.assign(op.grid.nodes.begin(), op.grid.nodes.begin() + static_cast<long>(op.size()));
  if (!vectors) return dec;
  for (const auto& v : te.vectors) {
    std::vector<double> u(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) u[i] = v[i] / std::sqrt(op.mass[i]);
    // Sign: make the largest-magnitude entry among the first few percent of
    // nodes positive (the pole value when it is not a node of the function).
    const std::size_t lead = std::max<std::size_t>(1, u.size() / 32);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < lead; ++i) {
      if (std::abs(u[i]) > std::abs(u[arg]) * (1.0 + 1e-12)) arg = i;
    }
    if (std::abs(u[arg]) < 1e-300) {
      arg = static_cast<std::size_t>(std::max_element(u.begin(), u.end(),
                                                      [](double a, double b) {
                                                        return std::abs(a) < std::abs(b);
                                                      }) -
                                     u.begin());
    }
    if (u[arg] < 0.0) {
      for (double& x : u) x = -x;
    }
    dec.eigenvectors.push_back(std::move(u));
  }
  return dec;
}

double gram_defect(const EigenDecomposition& dec) {
  double worst = 0.0;
  const std::size_t k = dec.eigenvectors.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < dec.mass.size(); ++i) {
        s += dec.mass[i] * dec.eigenvectors[a][i] * dec.eigenvectors[b][i];
      }
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

RichardsonEstimate richardson(double a1, double a2, double a3) {
  RichardsonEstimate out;
  out.order = std::log2((a1 - a2) / (a2 - a3));
  out.extrapolated = a3 + (a3 - a2) / 3.0;
  return out;
}

}  // namespace wmlab::discrete
