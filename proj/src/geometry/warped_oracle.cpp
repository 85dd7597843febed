#include "wmlab/geometry/warped_oracle.hpp"

#include "wmlab/core/error.hpp"

namespace wmlab::geometry {

MultiplyWarpedRicci multiply_warped_ricci(std::span<const WarpFactor> factors) {
  MultiplyWarpedRicci out;
  const std::size_t m = factors.size();
  std::vector<double> log_d1(m), second(m);
  for (std::size_t i = 0; i < m; ++i) {
    const RadialJet& b = factors[i].warp;
    if (factors[i].dim > 0 && !(b.value > 0.0)) {
      throw ModelError("warped-product oracle is singular where a warp vanishes");
    }
    log_d1[i] = factors[i].dim > 0 ? b.d1 / b.value : 0.0;
    second[i] = factors[i].dim > 0 ? b.d2 / b.value : 0.0;
  }

  // Ric(d_r, d_r) = -sum_i d_i b_i'' / b_i
  for (std::size_t i = 0; i < m; ++i) out.radial -= factors[i].dim * second[i];

  // Ric(e, e) on factor i:
  //   (d_i - 1)(1 - b_i'^2)/b_i^2 - b_i''/b_i - (b_i'/b_i) sum_{j != i} d_j b_j'/b_j
  out.factor.resize(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (factors[i].dim == 0) continue;
    const RadialJet& b = factors[i].warp;
    double cross = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) cross += factors[j].dim * log_d1[j];
    }
    out.factor[i] = (factors[i].dim - 1) * (1.0 - b.d1 * b.d1) / (b.value * b.value) - second[i] -
                    log_d1[i] * cross;
  }

  // The radial-fiber entries are sum of R(d_r, e_k, e, e_k) over the frame.
  // With warps depending on r only, every such curvature component carries a
  // derivative of a warp along a fiber direction, which is zero.
  out.radial_factor.assign(m, 0.0);
  // Entries between distinct fibers: R(e_i, e_k, e_j, e_k) vanishes unless
  // i = j because the second fundamental forms of the fibers are umbilic with
  // normal d_r.
  out.factor_factor.assign(m * (m - 1) / 2, 0.0);
  return out;
}

}  // namespace wmlab::geometry
