#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace boost::math::interpolators {
template <class Real>
class cardinal_cubic_b_spline;
}

namespace wmlab::geometry {

// Value and first two radial derivatives of a function of r.
struct RadialJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

enum class WarpFamily { euclidean, hyperbolic, tabulated };
enum class WeightFamily { zero, quadratic, log_poly, linear_asymptotic, tabulated };

const char* to_string(WarpFamily f);
const char* to_string(WeightFamily f);
WarpFamily parse_warp_family(const std::string& s);
WeightFamily parse_weight_family(const std::string& s);

namespace detail {
// Uniformly sampled clamped cubic spline on [0, (N-1) h].
class SampledSpline {
 public:
  SampledSpline(double step, std::vector<double> samples, double left_derivative);
  RadialJet jet(double r) const;
  double max_radius() const { return max_radius_; }

 private:
  std::shared_ptr<const boost::math::interpolators::cardinal_cubic_b_spline<double>> spline_;
  double max_radius_;
};
}  // namespace detail

// Warp phi(r) of the metric dr^2 + phi(r)^2 g_{S^{n-1}}.
//   euclidean:  phi = r                  params = []
//   hyperbolic: phi = sinh(a r)/a        params = [a], a > 0
//   tabulated:  cubic spline of samples  params = [h, phi_0, phi_1, ...]
// Pole regularity phi(0)=0, phi'(0)=1 holds by construction (tabulated
// samples are projected onto it).
class RadialWarpFunction {
 public:
  static RadialWarpFunction euclidean();
  static RadialWarpFunction hyperbolic(double a);
  static RadialWarpFunction tabulated(double step, std::vector<double> samples);
  static RadialWarpFunction from_params(WarpFamily family, std::vector<double> params);

  RadialJet jet(double r) const;
  double operator()(double r) const { return jet(r).value; }
  // log phi(r), stable for large r on the hyperbolic family.
  double log_value(double r) const;

  WarpFamily family() const { return family_; }
  std::span<const double> params() const { return params_; }
  // Largest r where the warp is defined (+inf for closed forms).
  double max_radius() const;

 private:
  RadialWarpFunction(WarpFamily family, std::vector<double> params);

  WarpFamily family_;
  std::vector<double> params_;
  std::shared_ptr<const detail::SampledSpline> spline_;
};

// Weight f of the measure e^{-f} dv. All families satisfy f'(0) = 0.
//   zero:              f = 0
//   quadratic:         f = c r^2
//   log_poly:          f = c log(1 + r^2)
//   linear_asymptotic: f = c sqrt(1 + r^2)
//   tabulated:         params = [h, f_0, f_1, ...]
class WeightFunction {
 public:
  static WeightFunction zero();
  static WeightFunction quadratic(double c);
  static WeightFunction log_poly(double c);
  static WeightFunction linear_asymptotic(double c);
  static WeightFunction tabulated(double step, std::vector<double> samples);
  static WeightFunction from_params(WeightFamily family, std::vector<double> params);

  RadialJet jet(double r) const;
  double operator()(double r) const { return jet(r).value; }

  WeightFamily family() const { return family_; }
  std::span<const double> params() const { return params_; }
  double max_radius() const;
  bool is_zero() const { return family_ == WeightFamily::zero; }

 private:
  WeightFunction(WeightFamily family, std::vector<double> params);

  WeightFamily family_;
  std::vector<double> params_;
  std::shared_ptr<const detail::SampledSpline> spline_;
};

}  // namespace wmlab::geometry
