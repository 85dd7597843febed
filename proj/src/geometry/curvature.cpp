#include "wmlab/geometry/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wmlab/core/error.hpp"
#include "wmlab/geometry/warped_oracle.hpp"

namespace wmlab::geometry {

namespace {

void check_radius(const WeightedModel& model, double r) {
  if (!(r > 0.0) || r > model.radius() * (1.0 + 1e-12)) {
    throw ModelError("radius " + std::to_string(r) + " outside (0, R]");
  }
}

}  // namespace

CurvaturePoint curvature_at(const WeightedModel& model, int q, double r) {
  check_radius(model, r);
  const int n = model.n();
  const RadialJet f = model.weight().jet(r);
  CurvaturePoint c{};
  if (n == 1) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    c.ric_radial = 0.0;
    c.hess_radial = f.d2;
    c.ric_tangential = c.hess_tangential = c.ricf_tangential = c.ricfq_tangential = nan;
  } else {
    const RadialJet p = model.warp().jet(r);
    if (!(p.value > 0.0)) throw ModelError("warp is nonpositive at r = " + std::to_string(r));
    c.ric_radial = -(n - 1) * p.d2 / p.value;
    c.ric_tangential = -p.d2 / p.value + (n - 2) * (1.0 - p.d1 * p.d1) / (p.value * p.value);
    c.hess_radial = f.d2;
    c.hess_tangential = f.d1 * p.d1 / p.value;
    c.ricf_tangential = c.ric_tangential + c.hess_tangential;
    c.ricfq_tangential = c.ricf_tangential;
  }
  c.ricf_radial = c.ric_radial + c.hess_radial;
  c.ricfq_radial = c.ricf_radial - f.d1 * f.d1 / q;
  return c;
}

CurvatureProfile eval_curvature(const WeightedModel& model, int q, std::span<const double> radii) {
  if (q < 1) throw ModelError("q must be >= 1");
  CurvatureProfile out;
  out.q = q;
  double inf = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    const CurvaturePoint c = curvature_at(model, q, r);
    out.radii.push_back(r);
    out.ric_radial.push_back(c.ric_radial);
    out.ric_tangential.push_back(c.ric_tangential);
    out.hess_radial.push_back(c.hess_radial);
    out.hess_tangential.push_back(c.hess_tangential);
    out.ricf_radial.push_back(c.ricf_radial);
    out.ricf_tangential.push_back(c.ricf_tangential);
    out.ricfq_radial.push_back(c.ricfq_radial);
    out.ricfq_tangential.push_back(c.ricfq_tangential);
    inf = std::min(inf, c.ricfq_radial);
    if (model.n() >= 2) inf = std::min(inf, c.ricfq_tangential);
  }
  out.K = radii.empty() ? 0.0 : std::max(0.0, -inf);
  return out;
}

std::vector<double> uniform_radii(double radius, std::size_t count, double start_fraction) {
  std::vector<double> out;
  out.reserve(count);
  const double a = start_fraction * radius;
  for (std::size_t i = 1; i <= count; ++i) {
    out.push_back(a + (radius - a) * static_cast<double>(i) / static_cast<double>(count));
  }
  return out;
}

double estimate_K(const WeightedModel& model, int q, std::size_t count) {
  const auto radii = uniform_radii(model.radius(), count);
  return eval_curvature(model, q, radii).K;
}

double drift_laplacian_radius(const WeightedModel& model, double r) {
  return model.drift_laplacian_radius(r);
}

double fiber_ricci_closed_form(const WarpedProductModel& wp, double r) {
  const WeightedModel& m = wp.base();
  const RadialJet f = m.weight().jet(r);
  double laplace_f = f.d2;
  if (m.n() >= 2) {
    const RadialJet p = m.warp().jet(r);
    laplace_f += (m.n() - 1) * p.d1 / p.value * f.d1;
  }
  const double q = wp.q();
  const double eps = wp.epsilon();
  // e^f Delta e^{-f} = f'^2 - Delta f
  return (q - 1.0) / (eps * eps) * std::exp(2.0 * f.value / q) - (f.d1 * f.d1 - laplace_f) / q;
}

BoundReport verify_prop31(const WarpedProductModel& wp, std::span<const double> radii, double tol) {
  const WeightedModel& m = wp.base();
  if (m.n() < 2) throw ModelError("warped-product Ricci check needs a base of dimension >= 2");
  BoundReport rep;
  rep.name = "prop31";
  rep.coord_names = {"r", "component"};
  double worst = 0.0;
  for (double r : radii) {
    if (!(r > 0.0)) throw ModelError("warped-product oracle is singular at the pole");
    if (r >= m.radius() * (1.0 + 1e-12)) throw ModelError("radius outside the model domain");
    const CurvaturePoint c = curvature_at(m, wp.q(), r);
    const WarpFactor factors[2] = {{m.n() - 1, m.warp().jet(r)}, {wp.q(), wp.fiber_warp(r)}};
    const MultiplyWarpedRicci o = multiply_warped_ricci(factors);

    const double formula[4] = {c.ricfq_radial, c.ricfq_tangential, fiber_ricci_closed_form(wp, r), 0.0};
    const double oracle[4] = {o.radial, o.factor[0], o.factor[1],
                              std::max({std::abs(o.radial_factor[0]), std::abs(o.radial_factor[1]),
                                        std::abs(o.factor_factor[0])})};
    for (int k = 0; k < 4; ++k) {
      const double diff = std::abs(formula[k] - oracle[k]);
      worst = std::max(worst, diff);
      rep.add({r, static_cast<double>(k)}, formula[k], oracle[k], tol - diff);
    }
  }
  rep.constants["max_abs_discrepancy"] = worst;
  rep.constants["tol"] = tol;
  rep.constants["q"] = wp.q();
  rep.constants["epsilon"] = wp.epsilon();
  rep.finalize();
  return rep;
}

double bochner_residual(const WeightedModel& model, const RadialTestFunction& u, double r) {
  check_radius(model, r);
  const int n = model.n();
  const auto [u0, u1, u2, u3] = u(r);
  (void)u0;
  const RadialJet p = model.warp_jet(r);
  const RadialJet f = model.weight().jet(r);
  const double dr = model.drift_laplacian_radius(r);
  // (Delta_f r)' = (n-1)(phi''/phi - phi'^2/phi^2) - f''
  const double dr_prime =
      (n - 1) * (p.d2 / p.value - (p.d1 * p.d1) / (p.value * p.value)) - f.d2;

  // Left side: Delta_f v for v = u'^2 (radial): v'' + (Delta_f r) v'.
  const double v1 = 2.0 * u1 * u2;
  const double v2 = 2.0 * u2 * u2 + 2.0 * u1 * u3;
  const double lhs = v2 + dr * v1;

  const double tangential = n >= 2 ? u1 * p.d1 / p.value : 0.0;
  const double hess_sq = u2 * u2 + (n - 1) * tangential * tangential;
  const double laplace_f_u_prime = u3 + dr_prime * u1 + dr * u2;
  const double ricf = curvature_at(model, 1, r).ricf_radial;
  const double rhs = 2.0 * hess_sq + 2.0 * u1 * laplace_f_u_prime + 2.0 * ricf * u1 * u1;
  return lhs - rhs;
}

BoundReport verify_bochner_radial(const WeightedModel& model, const RadialTestFunction& u,
                                  std::span<const double> radii, double tol) {
  BoundReport rep;
  rep.name = "bochner_radial";
  rep.coord_names = {"r"};
  double worst = 0.0;
  for (double r : radii) {
    const double res = bochner_residual(model, u, r);
    worst = std::max(worst, std::abs(res));
    rep.add({r}, res, 0.0, tol - std::abs(res));
  }
  rep.constants["max_abs_residual"] = worst;
  rep.constants["tol"] = tol;
  rep.finalize();
  return rep;
}

BoundReport check_mean_inequality(std::span<const MeanSample> samples) {
  BoundReport rep;
  rep.name = "mean_inequality";
  rep.coord_names = {"x", "y", "n", "q"};
  for (const auto& s : samples) {
    if (!(s.n > 0.0) || !(s.q > 0.0)) throw ModelError("mean inequality needs n, q > 0");
    const double rhs = s.x * s.x / s.n + s.y * s.y / s.q;
    const double lhs = (s.x + s.y) * (s.x + s.y) / (s.n + s.q);
    // Rounding allowance proportional to the magnitude of the terms.
    const double slack = rhs - lhs + 8.0 * std::numeric_limits<double>::epsilon() * rhs;
    rep.add({s.x, s.y, s.n, s.q}, lhs, rhs, slack);
  }
  rep.finalize();
  return rep;
}

}  // namespace wmlab::geometry
