#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wmlab/core/bound_report.hpp"
#include "wmlab/discrete/eigensolver.hpp"

namespace wmlab::discrete {

using geometry::WarpedProductModel;
using geometry::WeightedModel;

// Dimension of the degree-j spherical harmonics on S^q:
// (2j+q-1)(j+q-2)!/(j!(q-1)!), and 1 for j = 0.
long long harmonic_multiplicity(int j, int q);

// Fiber sector j of M x_rho S^q: mu_j = j(j+q-1), W_j = mu_j eps^-2 e^{2f/q}.
struct SectorSpec {
  int j = 0;
  int q = 1;
  double mu = 0.0;
  long long multiplicity = 1;

  static SectorSpec make(int j, int q);
  double potential(const WarpedProductModel& wp, double r) const;
  // mu_j eps^-2 min e^{2f/q} over the grid nodes.
  double floor(const WarpedProductModel& wp, const Grid1D& grid) const;
};

SturmLiouvilleOp sector_operator(const WarpedProductModel& wp, int j, std::size_t intervals);
// Spectrum of -Delta_f + W_j. Sector 0 is assembled exactly as the base operator.
EigenDecomposition sector_spectrum(const WarpedProductModel& wp, int j, std::size_t k,
                                   std::size_t intervals, bool vectors = false);

struct ProductEigenvalue {
  double value = 0.0;
  int j = 0;
  std::size_t index = 0;  // 0-based index within the sector
  long long multiplicity = 1;
  double residual = 0.0;
};

struct ProductSpectrum {
  std::vector<ProductEigenvalue> entries;  // sorted by (value, j, index)
  int j_max = 0;                           // last sector solved
  int j_requested = 0;
  // First k eigenvalues of the product counted with multiplicity.
  std::vector<double> lowest(std::size_t k) const;
  // Sector that supplies the i-th eigenvalue counted with multiplicity.
  int sector_of(std::size_t i) const;
};

// Merges sectors 0..j_max, extending j_max until the lowest eigenvalue of the
// next sector exceeds the k-th merged eigenvalue (the extension is reported
// in j_max, never capped silently).
ProductSpectrum product_spectrum(const WarpedProductModel& wp, int j_max, std::size_t k,
                                 std::size_t intervals);

struct CollapseRow {
  double epsilon = 0.0;
  std::size_t index = 0;  // 1-based
  double lambda_eps = 0.0;
  double lambda_f = 0.0;
  double deviation = 0.0;  // lambda_f - lambda_eps
  int sector = 0;
};

struct CollapseReport {
  BoundReport lambda1;      // coords {eps}; margin = tol - |rel gap|
  BoundReport convergence;  // coords {eps, index}; exact agreement below the crossover
  std::vector<CollapseRow> table;
  std::size_t k = 0;
  double crossover_floor = 0.0;  // sqrt(mu_1 min e^{2f/q} / lambda_{k,f})
  double crossover_exact = 0.0;  // sup{eps : lambda_1(sector 1) >= lambda_{k,f}}
  bool monotone = true;          // deviations nonincreasing as eps decreases
};

// eps_list must be strictly descending.
CollapseReport verify_collapse_identities(const WarpedProductModel& wp,
                                          std::span<const double> eps_list, std::size_t k,
                                          std::size_t intervals, double tol = 1e-10);

// First Dirichlet eigenvalue of the unit Euclidean ball of dimension `dim`,
// by the radial solver with Richardson extrapolation over three grids.
double euclidean_ball_constant(int dim);

// lambda_1 of -Delta_f on B(R) with Dirichlet data, for each R in R_list.
// Asserts the standard comparison form (n+q-1)K/4 + C/R^2, C the unit
// (n+q)-ball constant, and that lambda_1 decreases in R. The displayed form
// K/(4(n+q-1)) is reported alongside without being asserted.
// coords {R, kind}: kind 0 = standard form, kind 1 = monotonicity.
BoundReport cheng_bound_check(const WeightedModel& model, int q, std::span<const double> R_list,
                              double h = 0.025, std::optional<double> K = std::nullopt);

}  // namespace wmlab::discrete
