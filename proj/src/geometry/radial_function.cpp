#include "wmlab/geometry/radial_function.hpp"

#include <cmath>
#include <limits>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "wmlab/core/error.hpp"

namespace wmlab::geometry {

const char* to_string(WarpFamily f) {
  switch (f) {
    case WarpFamily::euclidean:
      return "euclidean";
    case WarpFamily::hyperbolic:
      return "hyperbolic";
    case WarpFamily::tabulated:
      return "tabulated";
  }
  return "?";
}

const char* to_string(WeightFamily f) {
  switch (f) {
    case WeightFamily::zero:
      return "zero";
    case WeightFamily::quadratic:
      return "quadratic";
    case WeightFamily::log_poly:
      return "log_poly";
    case WeightFamily::linear_asymptotic:
      return "linear_asymptotic";
    case WeightFamily::tabulated:
      return "tabulated";
  }
  return "?";
}

WarpFamily parse_warp_family(const std::string& s) {
  for (auto f : {WarpFamily::euclidean, WarpFamily::hyperbolic, WarpFamily::tabulated}) {
    if (s == to_string(f)) return f;
  }
  throw ModelError("unknown warp family '" + s + "'");
}

WeightFamily parse_weight_family(const std::string& s) {
  for (auto f : {WeightFamily::zero, WeightFamily::quadratic, WeightFamily::log_poly,
                 WeightFamily::linear_asymptotic, WeightFamily::tabulated}) {
    if (s == to_string(f)) return f;
  }
  throw ModelError("unknown weight family '" + s + "'");
}

namespace detail {

SampledSpline::SampledSpline(double step, std::vector<double> samples, double left_derivative) {
  if (!(step > 0.0) || samples.size() < 4) {
    throw ModelError("tabulated family needs a positive step and at least 4 samples");
  }
  const std::size_t n = samples.size();
  // Second-order one-sided difference for the far end.
  const double right = (3.0 * samples[n - 1] - 4.0 * samples[n - 2] + samples[n - 3]) / (2.0 * step);
  spline_ = std::make_shared<const boost::math::interpolators::cardinal_cubic_b_spline<double>>(
      samples.data(), n, 0.0, step, left_derivative, right);
  max_radius_ = step * static_cast<double>(n - 1);
}

RadialJet SampledSpline::jet(double r) const {
  if (r < 0.0 || r > max_radius_ * (1.0 + 1e-12)) {
    throw ModelError("radius " + std::to_string(r) + " outside tabulated range");
  }
  return {(*spline_)(r), spline_->prime(r), spline_->double_prime(r)};
}

}  // namespace detail

RadialWarpFunction::RadialWarpFunction(WarpFamily family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {}

RadialWarpFunction RadialWarpFunction::euclidean() { return {WarpFamily::euclidean, {}}; }

RadialWarpFunction RadialWarpFunction::hyperbolic(double a) {
  if (!(a > 0.0)) throw ModelError("hyperbolic warp needs a > 0");
  return {WarpFamily::hyperbolic, {a}};
}

RadialWarpFunction RadialWarpFunction::tabulated(double step, std::vector<double> samples) {
  std::vector<double> params{step};
  params.insert(params.end(), samples.begin(), samples.end());
  RadialWarpFunction w{WarpFamily::tabulated, params};
  samples.at(0) = 0.0;
  w.params_[1] = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i] > 0.0)) throw ModelError("tabulated warp must be positive away from the pole");
  }
  w.spline_ = std::make_shared<const detail::SampledSpline>(step, std::move(samples), 1.0);
  return w;
}

RadialWarpFunction RadialWarpFunction::from_params(WarpFamily family, std::vector<double> params) {
  switch (family) {
    case WarpFamily::euclidean:
      if (!params.empty()) throw ModelError("euclidean warp takes no params");
      return euclidean();
    case WarpFamily::hyperbolic:
      if (params.size() != 1) throw ModelError("hyperbolic warp takes params = [a]");
      return hyperbolic(params[0]);
    case WarpFamily::tabulated: {
      if (params.size() < 5) throw ModelError("tabulated warp takes params = [h, phi_0, ...]");
      const double h = params[0];
      return tabulated(h, std::vector<double>(params.begin() + 1, params.end()));
    }
  }
  throw ModelError("unknown warp family");
}

RadialJet RadialWarpFunction::jet(double r) const {
  switch (family_) {
    case WarpFamily::euclidean:
      return {r, 1.0, 0.0};
    case WarpFamily::hyperbolic: {
      const double a = params_[0];
      const double s = std::sinh(a * r) / a;
      return {s, std::cosh(a * r), a * a * s};
    }
    case WarpFamily::tabulated:
      return spline_->jet(r);
  }
  return {};
}

double RadialWarpFunction::log_value(double r) const {
  if (family_ == WarpFamily::hyperbolic) {
    const double a = params_[0];
    const double x = a * r;
    if (x > 20.0) return x - std::log(2.0 * a) + std::log1p(-std::exp(-2.0 * x));
  }
  // The spline meets phi(0) = 0 only to rounding; phi(r) = r (1 + O(r^2)) there.
  if (family_ == WarpFamily::tabulated && r < 1e-6) return std::log(r);
  return std::log(jet(r).value);
}

double RadialWarpFunction::max_radius() const {
  if (family_ == WarpFamily::tabulated) return spline_->max_radius();
  return std::numeric_limits<double>::infinity();
}

WeightFunction::WeightFunction(WeightFamily family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {}

WeightFunction WeightFunction::zero() { return {WeightFamily::zero, {}}; }
WeightFunction WeightFunction::quadratic(double c) { return {WeightFamily::quadratic, {c}}; }
WeightFunction WeightFunction::log_poly(double c) { return {WeightFamily::log_poly, {c}}; }
WeightFunction WeightFunction::linear_asymptotic(double c) {
  return {WeightFamily::linear_asymptotic, {c}};
}

WeightFunction WeightFunction::tabulated(double step, std::vector<double> samples) {
  std::vector<double> params{step};
  params.insert(params.end(), samples.begin(), samples.end());
  WeightFunction w{WeightFamily::tabulated, std::move(params)};
  w.spline_ = std::make_shared<const detail::SampledSpline>(step, std::move(samples), 0.0);
  return w;
}

WeightFunction WeightFunction::from_params(WeightFamily family, std::vector<double> params) {
  auto one = [&](const char* name) {
    if (params.size() != 1) throw ModelError(std::string(name) + " weight takes params = [c]");
    return params[0];
  };
  switch (family) {
    case WeightFamily::zero:
      if (!params.empty()) throw ModelError("zero weight takes no params");
      return zero();
    case WeightFamily::quadratic:
      return quadratic(one("quadratic"));
    case WeightFamily::log_poly:
      return log_poly(one("log_poly"));
    case WeightFamily::linear_asymptotic:
      return linear_asymptotic(one("linear_asymptotic"));
    case WeightFamily::tabulated: {
      if (params.size() < 5) throw ModelError("tabulated weight takes params = [h, f_0, ...]");
      const double h = params[0];
      return tabulated(h, std::vector<double>(params.begin() + 1, params.end()));
    }
  }
  throw ModelError("unknown weight family");
}

RadialJet WeightFunction::jet(double r) const {
  switch (family_) {
    case WeightFamily::zero:
      return {};
    case WeightFamily::quadratic: {
      const double c = params_[0];
      return {c * r * r, 2.0 * c * r, 2.0 * c};
    }
    case WeightFamily::log_poly: {
      const double c = params_[0];
      const double s = 1.0 + r * r;
      return {c * std::log1p(r * r), 2.0 * c * r / s, 2.0 * c * (1.0 - r * r) / (s * s)};
    }
    case WeightFamily::linear_asymptotic: {
      const double c = params_[0];
      const double s = std::sqrt(1.0 + r * r);
      return {c * s, c * r / s, c / (s * s * s)};
    }
    case WeightFamily::tabulated:
      return spline_->jet(r);
  }
  return {};
}

double WeightFunction::max_radius() const {
  if (family_ == WeightFamily::tabulated) return spline_->max_radius();
  return std::numeric_limits<double>::infinity();
}

}  // namespace wmlab::geometry
