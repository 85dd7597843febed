#pragma once

#include <span>
#include <vector>

#include "wmlab/geometry/radial_function.hpp"

namespace wmlab::geometry {

// One factor of a multiply warped product over a one-dimensional base:
//   dr^2 + sum_i b_i(r)^2 g_{S^{d_i}}   (unit round spheres).
struct WarpFactor {
  int dim = 0;
  RadialJet warp;
};

// Ricci tensor of a multiply warped product in an orthonormal frame
// {d/dr, e^{(1)}_a, e^{(2)}_b, ...}. The tensor is diagonal in blocks; the
// off-block entries are computed explicitly from the connection rather than
// assumed to vanish.
struct MultiplyWarpedRicci {
  double radial = 0.0;                 // Ric(d_r, d_r)
  std::vector<double> factor;          // Ric(e, e) for a unit e tangent to factor i
  std::vector<double> radial_factor;   // Ric(d_r, e) for a unit e tangent to factor i
  std::vector<double> factor_factor;   // Ric(e_i, e_j), i < j, row-major upper triangle
};

// Standard curvature formulas for metrics dr^2 + sum b_i^2 g_{S^{d_i}}
// (Dobarro-Unal type multiply warped products with a 1-D base).
MultiplyWarpedRicci multiply_warped_ricci(std::span<const WarpFactor> factors);

}  // namespace wmlab::geometry
