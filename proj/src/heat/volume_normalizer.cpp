#include "wmlab/heat/volume_normalizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "wmlab/core/error.hpp"
#include "wmlab/geometry/volume.hpp"

namespace wmlab::heat {

double cap_fraction(int n, double theta) {
  const double pi = std::numbers::pi;
  theta = std::clamp(theta, 0.0, pi);
  if (n == 1) return theta >= pi ? 1.0 : 0.5;
  if (n == 2) return theta / pi;
  const double s2 = std::pow(std::sin(theta), 2);
  const double half = 0.5 * boost::math::ibeta(0.5 * (n - 1), 0.5, s2);
  return theta <= 0.5 * pi ? half : 1.0 - half;
}

namespace {

// Cap angle at shell radius s for a ball of radius rho centered at distance c;
// returns -1 when the shell misses the ball.
double cap_angle(const WeightedModel& m, double c, double s, double rho) {
  const double pi = std::numbers::pi;
  if (std::abs(s - c) > rho) return -1.0;
  if (s + c <= rho) return pi;
  if (m.n() == 1) return 0.0;
  // Haversine form (1 - cos theta)/2, which stays accurate for thin caps far
  // from the pole.
  double hav;
  const auto& w = m.warp();
  switch (w.family()) {
    case geometry::WarpFamily::euclidean:
      hav = (rho * rho - (s - c) * (s - c)) / (4.0 * s * c);
      break;
    case geometry::WarpFamily::hyperbolic: {
      const double a = w.params()[0];
      // cosh(a rho) - cosh(a (s - c)) = 2 sinh(a (rho + s - c)/2) sinh(a (rho - s + c)/2)
      const double num = 2.0 * std::sinh(0.5 * a * (rho + s - c)) * std::sinh(0.5 * a * (rho - s + c));
      hav = num / (2.0 * std::sinh(a * s) * std::sinh(a * c));
      break;
    }
    default:
      hav = (rho * rho - (s - c) * (s - c)) / (4.0 * w(s) * w(c));
      break;
  }
  return 2.0 * std::asin(std::sqrt(std::clamp(hav, 0.0, 1.0)));
}

}  // namespace

double ball_volume(const WeightedModel& model, double center, double rho) {
  return std::exp(log_ball_volume(model, center, rho));
}

double log_ball_volume(const WeightedModel& model, double center, double rho) {
  if (!(rho > 0.0) || !(center >= 0.0)) throw ModelError("ball needs rho > 0 and center >= 0");
  if (center == 0.0) return std::log(geometry::weighted_volume(model, rho));
  const double lo = std::max(0.0, center - rho);
  const double hi = std::min(center + rho, model.warp().max_radius());
  if (!(hi > lo)) throw ModelError("ball lies outside the tabulated warp");
  // Far from the pole the density can underflow; integrate it relative to
  // its peak on the shell range.
  double shift = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 64; ++i) shift = std::max(shift, model.log_density(lo + (hi - lo) * i / 64.0));
  auto integrand = [&](double s) {
    const double th = cap_angle(model, center, s, rho);
    return th < 0.0 ? 0.0 : std::exp(model.log_density(s) - shift) * cap_fraction(model.n(), th);
  };
  // The cap angle has square-root behaviour at the ends and at s = rho - center,
  // which tanh-sinh handles on each piece.
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  const double kink = rho - center;
  double total = 0.0;
  double a = lo;
  for (double b : {kink, hi}) {
    if (b <= a) continue;
    b = std::min(b, hi);
    total += ts.integrate(integrand, a, b, 1e-12);
    a = b;
  }
  return shift + std::log(total);
}

VolumeNormalizer::VolumeNormalizer(const WeightedModel& model, double r_max, double step)
    : r_max_(r_max), pole_volume_(ball_volume(model, 0.0, 1.0)) {
  const auto count = static_cast<std::size_t>(std::ceil(r_max / step)) + 1;
  const double h = r_max / static_cast<double>(count - 1);
  std::vector<double> logs(count);
  logs[0] = std::log(pole_volume_);
  for (std::size_t i = 1; i < count; ++i) logs[i] = log_ball_volume(model, h * double(i), 1.0);
  // The volume is even in r through the pole, so the slope there is zero.
  log_volume_ = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
      logs.begin(), logs.end(), 0.0, h, 0.0);
}

double VolumeNormalizer::log_volume(double r) const {
  if (r == 0.0) return std::log(pole_volume_);
  if (!(r >= 0.0) || r > r_max_ * (1.0 + 1e-12)) throw ModelError("normalizer radius outside the table");
  return (*log_volume_)(std::min(r, r_max_));
}

double VolumeNormalizer::volume(double r) const { return std::exp(log_volume(r)); }

double VolumeNormalizer::phi(double r) const { return std::exp(-0.5 * log_volume(r)); }

}  // namespace wmlab::heat
