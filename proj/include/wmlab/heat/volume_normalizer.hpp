#pragma once

#include <memory>
#include <vector>

#include "wmlab/geometry/model.hpp"

namespace boost::math::interpolators {
template <class Real>
class cardinal_cubic_b_spline;
}

namespace wmlab::heat {

using geometry::WeightedModel;

// V_f(B(x, rho)) for a point x at distance center from the pole, integrated
// shell by shell: the part of the sphere of radius s inside the ball is a
// polar cap whose angle comes from the model's law of cosines (exact for the
// euclidean and hyperbolic warps; the tabulated warp uses
// d^2 = (s - r)^2 + 4 phi(r) phi(s) sin^2(theta/2)). At the pole this is V_f(rho).
double ball_volume(const WeightedModel& model, double center, double rho);
// log V_f(B(x, rho)), finite where the volume itself underflows.
double log_ball_volume(const WeightedModel& model, double center, double rho);

// Fraction of the unit sphere S^{n-1} within angle theta of a point; for n = 1
// the two points of S^0 are at angles 0 and pi.
double cap_fraction(int n, double theta);

// phi(x) = V_f(x, 1)^{-1/2} tabulated along a ray on [0, r_max] with a cubic
// spline through exact values; at the pole the value is exact.
class VolumeNormalizer {
 public:
  VolumeNormalizer(const WeightedModel& model, double r_max, double step = 0.02);

  // V_f(x, 1) for |x| = r.
  double volume(double r) const;
  double log_volume(double r) const;
  double phi(double r) const;
  double r_max() const { return r_max_; }

 private:
  double r_max_;
  double pole_volume_;
  std::shared_ptr<const boost::math::interpolators::cardinal_cubic_b_spline<double>> log_volume_;
};

}  // namespace wmlab::heat
