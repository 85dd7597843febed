#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wmlab/core/bound_report.hpp"
#include "wmlab/geometry/model.hpp"

namespace wmlab::geometry {

// Solution of the Riccati comparison y' + y^2/dim = K with y ~ dim/r at 0:
//   sqrt(dim K) coth(sqrt(K/dim) r)   (K > 0),   dim / r   (K = 0).
double riccati_bound(double dim, double K, double r);

// Laplacian comparison for Delta_f r under Ric_f^q >= -K. Asserted at every
// radius (coords {r, form}):
//   form 0: coth form with dimension n+q,
//   form 1: absolute form (n+q)/r + sqrt((n+q) K),
//   form 2: sharp coth form with dimension n+q-1.
// K defaults to estimate_K(model, q). margin = bound - Delta_f r.
BoundReport verify_laplacian_comparison(const WeightedModel& model, int q,
                                        std::span<const double> radii,
                                        std::optional<double> K = std::nullopt);

// For f = 0 the comparison holds for every q > 0; its q -> 0 limit is the
// Riemannian bound sqrt((n-1)K_R) coth(sqrt(K_R/(n-1)) r) with K_R from Ric.
// Returns max over radii of |bound - Delta r| (zero on space forms).
double riemannian_comparison_gap(const WeightedModel& model, std::span<const double> radii);

struct AsymptoticProfile {
  std::vector<double> radii;
  std::vector<double> delta;  // max(0, -Ric_f^q(d_r, d_r))
  double tail_value = 0.0;     // delta(R)
  bool verdict = false;
  double threshold = 1e-3;
};

// Radial lower curvature barrier delta(r); verdict true iff delta(R) is below
// the threshold and delta is not increasing over the outer decade.
AsymptoticProfile asymptotic_nonnegativity_profile(const WeightedModel& model, int q,
                                                   std::size_t samples = 2000,
                                                   double threshold = 1e-3);

}  // namespace wmlab::geometry
