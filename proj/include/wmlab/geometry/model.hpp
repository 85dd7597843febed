#pragma once

#include <string>

#include "wmlab/geometry/radial_function.hpp"

namespace wmlab::geometry {

enum class BoundaryCondition { dirichlet, neumann };

const char* to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(const std::string& s);

// Area of the unit k-sphere S^k in R^{k+1}; S^0 counts its two points.
double unit_sphere_area(int k);

// Rotationally symmetric weighted model (M, g, e^{-f} dv) on the geodesic ball
// B(radius) around the pole, g = dr^2 + phi(r)^2 g_{S^{n-1}}. For n = 1 the
// model is the half-line [0, radius] with even reflection at 0 and the warp is
// ignored. The distance to the pole is r itself.
class WeightedModel {
 public:
  WeightedModel(int n, RadialWarpFunction warp, WeightFunction weight, double radius,
                BoundaryCondition bc = BoundaryCondition::dirichlet);

  int n() const { return n_; }
  const RadialWarpFunction& warp() const { return warp_; }
  const WeightFunction& weight() const { return weight_; }
  double radius() const { return radius_; }
  BoundaryCondition bc() const { return bc_; }

  // Same geometry on a different domain radius / boundary condition.
  WeightedModel with_radius(double radius) const;
  WeightedModel with_bc(BoundaryCondition bc) const;

  // Warp jet; for n = 1 the constant-one "warp" (phi^{n-1} = 1).
  RadialJet warp_jet(double r) const;

  // Weighted area density w(r) = omega_{n-1} phi(r)^{n-1} e^{-f(r)} and its log.
  double density(double r) const;
  double log_density(double r) const;
  // Weighted area of the sphere of radius r about the pole (same as density).
  double sphere_area(double r) const { return density(r); }

  // Drifting Laplacian of the distance function, (n-1) phi'/phi - f'.
  double drift_laplacian_radius(double r) const;

  std::string describe() const;

 private:
  int n_;
  RadialWarpFunction warp_;
  WeightFunction weight_;
  double radius_;
  BoundaryCondition bc_;
};

// M x S^q with metric g + eps^2 e^{-2f/q} g_{S^q}.
class WarpedProductModel {
 public:
  WarpedProductModel(WeightedModel base, int q, double epsilon);

  const WeightedModel& base() const { return base_; }
  int q() const { return q_; }
  double epsilon() const { return epsilon_; }
  WarpedProductModel with_epsilon(double epsilon) const;

  // Fiber warp rho(r) = eps exp(-f(r)/q) with derivatives.
  RadialJet fiber_warp(double r) const;

 private:
  WeightedModel base_;
  int q_;
  double epsilon_;
};

}  // namespace wmlab::geometry
