#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wmlab/core/bound_report.hpp"
#include "wmlab/discrete/eigensolver.hpp"

namespace wmlab::heat {

using discrete::EigenDecomposition;
using geometry::WeightedModel;

struct KernelOptions {
  std::size_t intervals = 1000;
  double t_min = 0.01;         // smallest time the truncation must support
  double rel_tail = 1e-12;     // tail bound relative to the leading term
};

// Pole-anchored heat kernel H(pole, r, t) = sum_k e^{-lambda_k t} psi_k(0) psi_k(r)
// of the drifting Laplacian on the model domain. Only radial eigenfunctions
// are nonzero at the pole, so the radial sector is the whole sum there.
struct SpectralKernel {
  WeightedModel model;
  EigenDecomposition dec;  // eigenpairs used in the sum (k of them)
  double next_eigenvalue = 0.0;   // lambda_{k+1}, bounds the omitted tail
  std::size_t unknowns = 0;       // N, the size of the discrete operator
  double t_reliable = 0.0;        // smallest t meeting the tail criterion at the pole
  double h = 0.0;
  // Per-pair bound on the eigenvector error in the symmetric (M^{1/2}) form,
  // residual / spectral gap; divided by sqrt(m_i) it bounds the nodal error.
  std::vector<double> vector_error;
};

// Picks k so that the tail bound at (pole, pole, t_min) is below
// rel_tail times the leading term, extending up to the N/4 accuracy guard.
SpectralKernel build_kernel(const WeightedModel& model, const KernelOptions& opts = {});

struct KernelValue {
  double value = 0.0;
  double time_derivative = 0.0;
  double tail_bound = 0.0;  // (N-k) e^{-lambda_{k+1} t} / sqrt(m_0 m_r)
  double abs_sum = 0.0;     // sum of |terms|; rounding floor ~ 1e-15 abs_sum
  double leading = 0.0;     // |first term|
  double noise = 0.0;       // eigenvector error plus rounding of the sum
  // tail_bound <= 1e-12 leading, and tail_bound + noise <= 1e-2 |value|
  bool reliable = false;
};

// Throws ConvergenceError below t_reliable (the message carries it). Off-node
// radii use 4-point Lagrange interpolation of the eigenvectors with even
// reflection through the pole.
KernelValue kernel_eval(const SpectralKernel& spec, double r, double t);
// Values on every unknown node.
std::vector<double> kernel_on_nodes(const SpectralKernel& spec, double t);

// Weighted mass sum_i m_i H(pole, r_i, t).
double kernel_mass(const SpectralKernel& spec, double t);

// Crank-Nicolson from H(pole, ., t0) to t1 on the same operator, compared
// with the spectral kernel at t1 (relative weighted l2 norm). Also runs the nested
// domains R, 2R, 4R and asserts that interior agreement improves; that part
// is skipped (noted) when the larger domains cannot be assembled.
struct CrosscheckResult {
  BoundReport report;  // coords {kind, value}: kind 0 = CN vs spectral, 1 = nested domains
  double cn_error = 0.0;
  std::vector<double> nested_differences;  // |H_R - H_2R|, |H_2R - H_4R| on r <= R/2
};
std::vector<double> crank_nicolson(const discrete::SturmLiouvilleOp& op, std::vector<double> u,
                                   double dt, std::size_t steps);
CrosscheckResult verify_semigroup_crosscheck(const WeightedModel& model, const KernelOptions& opts,
                                             double t0, double t1, std::size_t steps, double tol);

// Weak limit: int H(pole, ., t) g e^{-f} dv -> g(pole) as t -> 0 for each g.
// coords {g index, t}; margin = previous error - current error on the
// sequence, plus a final tolerance sample at the smallest t.
BoundReport verify_weak_limit(const SpectralKernel& spec,
                              std::span<const std::function<double(double)>> tests,
                              std::span<const double> times, double tol);

// Mass <= 1 (Dirichlet) or = 1 to mass_tol (Neumann), nonincreasing in t,
// and H > 0 on interior nodes at every reliable t. A mass sample is
// inconclusive when the eigenvector error carried into the weighted sum
// (max_mass_noise) exceeds mass_tol, as on domains with a huge volume.
BoundReport verify_mass_positivity(const SpectralKernel& spec, std::span<const double> times,
                                   double mass_tol = 1e-8);

// Small-time regression log H(pole, r, t) = a + c log t + b / t over times;
// Varadhan's formula gives -4 b = d^2 = r^2. coords {r}; margin = rel_tol - |(-4b)/r^2 - 1|.
BoundReport verify_varadhan(const SpectralKernel& spec, std::span<const double> radii,
                            std::span<const double> times, double rel_tol = 0.05);

}  // namespace wmlab::heat
