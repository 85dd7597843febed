#pragma once

#include <span>
#include <vector>

#include "wmlab/discrete/operator.hpp"

namespace wmlab::discrete {

// Smallest eigenpairs of a symmetric tridiagonal matrix (diag d, off e).
// Eigenvalues by Sturm-count bisection, eigenvectors by inverse iteration
// with reorthogonalization against all previously accepted vectors.
// Deterministic: no random start vectors.
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // Euclidean-orthonormal
  std::vector<double> residuals;             // ||(T - lambda) v||_2
  double norm = 0.0;                         // Gershgorin bound used for tolerances
};

// Number of eigenvalues of T strictly below x.
std::size_t sturm_count(std::span<const double> d, std::span<const double> e, double x);

TridiagonalEigen tridiagonal_eigen(std::span<const double> d, std::span<const double> e,
                                   std::size_t k, bool vectors = true);

// k smallest eigenpairs of the weighted operator. Eigenvectors are nodal
// values u with sum_i m_i u_i u_j = delta; the sign is fixed so that the
// first entry of largest magnitude among the leading nodes is positive.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
  std::vector<double> residuals;
  double norm = 0.0;
  std::vector<double> mass;   // weights of the inner product
  std::vector<double> nodes;  // radii of the unknowns
};

// Requires k <= size/4; residuals are at most 1e-10 ||B|| or a
// ConvergenceError is thrown.
EigenDecomposition eigen_solve(const SturmLiouvilleOp& op, std::size_t k, bool vectors = true);

// Max |G - I| for the weighted Gram matrix of the eigenvectors.
double gram_defect(const EigenDecomposition& dec);

struct RichardsonEstimate {
  double order = 0.0;         // log2((a1 - a2)/(a2 - a3))
  double extrapolated = 0.0;  // a3 + (a3 - a2)/(2^2 - 1)
};
// a1, a2, a3 on grids with spacing h, h/2, h/4.
RichardsonEstimate richardson(double a1, double a2, double a3);

}  // namespace wmlab::discrete
