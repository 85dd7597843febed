#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wmlab/geometry/model.hpp"

namespace wmlab::discrete {

using geometry::BoundaryCondition;

// Radial grid 0 = r_0 < r_1 < ... < r_N = R.
struct Grid1D {
  std::vector<double> nodes;

  static Grid1D uniform(double radius, std::size_t intervals);
  std::size_t intervals() const { return nodes.size() - 1; }
  double radius() const { return nodes.back(); }
};

// -(1/w)(w u')' + W on a radial grid, w = omega_{n-1} phi^{n-1} e^{-f}.
//
// Vertex-centered finite volumes: node i owns the dual cell between the
// neighbouring midpoints (clipped to [0, R]); its lumped mass is the exact
// integral of w over that cell, and the face between nodes i, i+1 carries the
// flux weight w(mid)/(r_{i+1} - r_i). No flux crosses r = 0. Dirichlet drops
// the last node; Neumann keeps it with a half cell.
//
// In the weighted inner product <u, v> = sum m_i u_i v_i the operator is the
// symmetric tridiagonal matrix B = M^{-1/2} (S + M W) M^{-1/2} acting on
// v = M^{1/2} u, which is what diag/offdiag hold.
struct SturmLiouvilleOp {
  Grid1D grid;
  BoundaryCondition bc = BoundaryCondition::dirichlet;
  std::vector<double> mass;       // per unknown
  std::vector<double> face;       // flux weight per interval
  std::vector<double> potential;  // per unknown
  std::vector<double> diag;       // B
  std::vector<double> offdiag;    // B, size unknowns - 1

  std::size_t size() const { return diag.size(); }
  // (A u)_i for nodal values u (unknowns only).
  std::vector<double> apply(std::span<const double> u) const;
  double inner(std::span<const double> u, std::span<const double> v) const;
  // Gershgorin bound on ||B||_2.
  double norm_bound() const;
};

// W sampled on every grid node (the last value is ignored under Dirichlet).
SturmLiouvilleOp assemble(const geometry::WeightedModel& model, const Grid1D& grid,
                          std::span<const double> W);
SturmLiouvilleOp assemble(const geometry::WeightedModel& model, const Grid1D& grid);
// Uniform grid on [0, model.radius()].
SturmLiouvilleOp assemble(const geometry::WeightedModel& model, std::size_t intervals,
                          const std::function<double(double)>& W = {});

}  // namespace wmlab::discrete
