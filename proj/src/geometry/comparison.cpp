#include "wmlab/geometry/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wmlab/core/error.hpp"
#include "wmlab/geometry/curvature.hpp"

namespace wmlab::geometry {

double riccati_bound(double dim, double K, double r) {
  if (!(r > 0.0)) throw ModelError("comparison bound is singular at r = 0");
  if (K <= 0.0) return dim / r;
  const double a = std::sqrt(K / dim);
  const double x = a * r;
  if (x < 1e-4) return dim / r * (1.0 + x * x / 3.0);
  return std::sqrt(dim * K) / std::tanh(x);
}

BoundReport verify_laplacian_comparison(const WeightedModel& model, int q,
                                        std::span<const double> radii, std::optional<double> K) {
  const double k = K ? *K : estimate_K(model, q);
  if (k < 0.0) throw ModelError("K must be nonnegative");
  const double m = model.n() + q;
  BoundReport rep;
  rep.name = "laplacian_comparison";
  rep.coord_names = {"r", "form"};
  for (double r : radii) {
    const double lap = model.drift_laplacian_radius(r);
    const double bounds[3] = {riccati_bound(m, k, r), m / r + std::sqrt(m * k),
                              riccati_bound(m - 1.0, k, r)};
    for (int form = 0; form < 3; ++form) {
      // Relative rounding allowance near the pole where both sides blow up.
      const double slack = bounds[form] - lap + 1e-13 * std::abs(bounds[form]);
      rep.add({r, static_cast<double>(form)}, lap, bounds[form], slack);
    }
  }
  rep.constants["K"] = k;
  rep.constants["n_plus_q"] = m;
  rep.finalize();
  return rep;
}

double riemannian_comparison_gap(const WeightedModel& model, std::span<const double> radii) {
  if (!model.weight().is_zero()) throw ModelError("Riemannian comparison needs f = 0");
  if (model.n() < 2) throw ModelError("Riemannian comparison needs n >= 2");
  const double n1 = model.n() - 1.0;
  double ric_inf = std::numeric_limits<double>::infinity();
  for (double r : uniform_radii(model.radius(), 20000)) {
    const CurvaturePoint c = curvature_at(model, 1, r);
    ric_inf = std::min({ric_inf, c.ric_radial, c.ric_tangential});
  }
  const double k_r = std::max(0.0, -ric_inf);
  double gap = 0.0;
  for (double r : radii) {
    gap = std::max(gap, std::abs(riccati_bound(n1, k_r, r) - model.drift_laplacian_radius(r)));
  }
  return gap;
}

AsymptoticProfile asymptotic_nonnegativity_profile(const WeightedModel& model, int q,
                                                   std::size_t samples, double threshold) {
  AsymptoticProfile out;
  out.threshold = threshold;
  out.radii = uniform_radii(model.radius(), samples);
  for (double r : out.radii) {
    out.delta.push_back(std::max(0.0, -curvature_at(model, q, r).ricfq_radial));
  }
  out.tail_value = out.delta.back();
  const double R = model.radius();
  double inner = 0.0, outer = 0.0;
  for (std::size_t i = 0; i < out.radii.size(); ++i) {
    const double r = out.radii[i];
    if (r >= R / 10.0 && r < R / 2.0) inner = std::max(inner, out.delta[i]);
    if (r >= R / 2.0) outer = std::max(outer, out.delta[i]);
  }
  out.verdict = out.tail_value < threshold && outer <= inner + 1e-15;
  return out;
}

}  // namespace wmlab::geometry
