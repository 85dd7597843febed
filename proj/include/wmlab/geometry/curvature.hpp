#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "wmlab/core/bound_report.hpp"
#include "wmlab/geometry/model.hpp"

namespace wmlab::geometry {

// Radial and tangential components of Ric, Ric_f = Ric + Hess f and
// Ric_f^q = Ric_f - df (x) df / q on a rotationally symmetric model. The
// tangential entries are NaN for n = 1 (no tangential directions).
struct CurvatureProfile {
  int q = 1;
  std::vector<double> radii;
  std::vector<double> ric_radial, ric_tangential;
  std::vector<double> hess_radial, hess_tangential;
  std::vector<double> ricf_radial, ricf_tangential;
  std::vector<double> ricfq_radial, ricfq_tangential;
  // max(0, -min over samples of the smallest eigenvalue of Ric_f^q)
  double K = 0.0;
};

struct CurvaturePoint {
  double ric_radial, ric_tangential;
  double hess_radial, hess_tangential;
  double ricf_radial, ricf_tangential;
  double ricfq_radial, ricfq_tangential;
};

CurvaturePoint curvature_at(const WeightedModel& model, int q, double r);

CurvatureProfile eval_curvature(const WeightedModel& model, int q, std::span<const double> radii);

// Uniform samples r_i = i R / count, i = 1..count.
std::vector<double> uniform_radii(double radius, std::size_t count, double start_fraction = 0.0);

// K estimated as the negated infimum of Ric_f^q over `count` uniform samples
// of (0, R], clamped at 0. The default density is ten times the default
// operator grid.
double estimate_K(const WeightedModel& model, int q, std::size_t count = 20000);

// Drifting Laplacian of the distance to the pole: (n-1) phi'/phi - f'.
double drift_laplacian_radius(const WeightedModel& model, double r);

// Checks the Ricci tensor of M x_{rho} S^q, rho = eps e^{-f/q}, computed by
// the multiply-warped-product oracle against the closed forms
//   base block  = Ric_f^q,   mixed = 0,
//   fiber block = (q-1) eps^-2 e^{2f/q} - q^-1 (f'^2 - Delta f).
// coords: {r, component}, component 0 = base radial, 1 = base tangential,
// 2 = fiber, 3 = mixed. margin = tol - |formula - oracle|.
BoundReport verify_prop31(const WarpedProductModel& wp, std::span<const double> radii, double tol);

// Closed-form fiber block value of the warped-product Ricci tensor.
double fiber_ricci_closed_form(const WarpedProductModel& wp, double r);

// A radial test function with three derivatives: returns {u, u', u'', u'''}.
using RadialTestFunction = std::function<std::array<double, 4>(double)>;

// Residual of the weighted Bochner identity for a radial u,
//   Delta_f |grad u|^2 - 2|Hess u|^2 - 2<grad u, grad Delta_f u> - 2 Ric_f(grad u, grad u).
double bochner_residual(const WeightedModel& model, const RadialTestFunction& u, double r);

BoundReport verify_bochner_radial(const WeightedModel& model, const RadialTestFunction& u,
                                  std::span<const double> radii, double tol);

struct MeanSample {
  double x, y, n, q;
};

// x^2/n + y^2/q >= (x+y)^2/(n+q).
BoundReport check_mean_inequality(std::span<const MeanSample> samples);

}  // namespace wmlab::geometry
