#pragma once

#include <span>
#include <vector>

#include "wmlab/core/bound_report.hpp"
#include "wmlab/geometry/model.hpp"

namespace wmlab::heat {

using geometry::WarpedProductModel;

// Peaceman-Rachford ADI on the (r, theta) grid of M x S^1 with the operator
// (1/w)(w u_r)_r + eps^-2 e^{2f} u_thetatheta. Cells are centered in r with
// pointwise (non-conservative) coefficients, periodic in theta, u = 0 on the
// outer face under Dirichlet and zero flux under Neumann.
class ProductGrid2D {
 public:
  ProductGrid2D(const WarpedProductModel& wp, std::size_t radial_cells, std::size_t fiber_points);

  std::size_t radial_cells() const { return centers_.size(); }
  std::size_t fiber_points() const { return fiber_; }
  const std::vector<double>& centers() const { return centers_; }
  double h() const { return h_; }

  // u[i * fiber_points + j] at (r_i, theta_j).
  void step(std::vector<double>& u, double dt) const;
  void advance(std::vector<double>& u, double duration, double dt_max) const;
  // Mean over theta at each radial cell.
  std::vector<double> fiber_average(const std::vector<double>& u) const;
  // Weighted mass sum_i w(r_i) h * average_i.
  double mass(const std::vector<double>& avg) const;

 private:
  std::size_t fiber_;
  double h_, dtheta_;
  std::vector<double> centers_, w_center_, w_face_, fiber_coef_;
  bool dirichlet_;
  void apply_r(const std::vector<double>& u, std::vector<double>& out) const;
  void apply_theta(const std::vector<double>& u, std::vector<double>& out) const;
};

// 4-point Lagrange interpolation of cell-centered radial data with even
// reflection through the pole.
double interpolate_cells(const std::vector<double>& centers, const std::vector<double>& values, double r);

struct AveragingOptions {
  std::vector<std::size_t> radial_cells = {240, 480, 960};
  std::size_t fiber_points = 16;
  double t0 = 0.02;               // start from the 1D kernel here
  double dt_per_h = 0.1;          // dt = dt_per_h * h
  std::size_t reference_intervals = 3840;
  double tol = 1e-3;
  double min_order = 1.8;
  double perturbation = 0.5;      // amplitude of the cos(theta) pulse in the nonuniform run
};

struct AveragingResult {
  BoundReport report;
  std::vector<double> grid_errors;  // max relative error per grid (over t_list and samples)
  double order = 0.0;               // log2 of the last error ratio
  double fiber_dependence = 0.0;    // fiber-uniform start, finest grid
  double mass_error = 0.0;
  double mode_decay_rate = 0.0;     // observed decay of the cos(theta) component
  double mode_decay_floor = 0.0;    // lambda_1 + eps^-2 min e^{2f} kappa
};

// coords {kind, index, value}: kind 0 relative error at t_list[index] on the
// finest grid, 1 refinement order, 2 fiber dependence, 3 mass agreement,
// 4 nonuniform fiber-average error, 5 cos(theta) decay rate.
AveragingResult verify_averaging_identity(const WarpedProductModel& wp, std::span<const double> t_list,
                                          const AveragingOptions& opts = {});

}  // namespace wmlab::heat
