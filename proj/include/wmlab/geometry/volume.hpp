#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wmlab/core/bound_report.hpp"
#include "wmlab/core/quadrature.hpp"
#include "wmlab/geometry/model.hpp"

namespace wmlab::geometry {

// V_f(r) = omega_{n-1} int_0^r phi^{n-1} e^{-f} ds (2 int_0^r e^{-f} for n = 1).
// r may be +infinity when the weight family is defined on the half-line.
QuadratureResult weighted_volume_with_error(const WeightedModel& model, double r);
double weighted_volume(const WeightedModel& model, double r);

// Volume-comparison constant C' of the form
//   V_f(R)/V_f(r) <= r^{-(n+q)} exp(sqrt(n+q) sqrt(K) R + C'),
// calibrated once on the hyperbolic (a=1) n=3, q=1 model over
// volume_calibration_pairs() and frozen here. calibrate_volume_constant()
// reruns the calibration.
inline constexpr double kFrozenVolumeConstant = -2.780832259371794;
std::vector<std::pair<double, double>> volume_calibration_pairs();
double calibrate_volume_constant();

// For each pair (r, R) with 1 <= r < R <= radius asserts the Bishop-Gromov
// form V_f(R)/V_f(r) <= int_0^R s(t) dt / int_0^r s(t) dt with
// s(t) = (sinh(a t)/a)^{n+q-1}, a = sqrt(K/(n+q-1)) (t^{n+q-1} for K = 0).
// The displayed exponential form with the frozen C' is checked as a warning.
// coords {r, R}; margin = log(bound) - log(ratio).
BoundReport verify_volume_comparison(const WeightedModel& model, int q,
                                     std::span<const std::pair<double, double>> pairs,
                                     std::optional<double> K = std::nullopt);

// int_0^R s / int_0^r s for the comparison density above, with exponent `dim`.
double comparison_volume_ratio(double dim_minus_one, double K, double r, double R);

enum class GrowthClass { subexponential, exponential, finite, inconclusive };
const char* to_string(GrowthClass g);

struct GrowthEvidence {
  GrowthClass verdict = GrowthClass::inconclusive;
  double rate_outer_half = 0.0;     // slope of log V_f vs r on the outer half of r_grid
  double rate_outer_quarter = 0.0;  // same on the outer quarter
  double density_power_slope = 0.0; // slope of log w vs log r on the outer half
  double total_volume = 0.0;        // V_f(infinity) when finite
  std::vector<double> radii, volumes;
  // C(eps) = max_r V_f(r) / (V_f(1) e^{eps r}) over r_grid.
  std::vector<std::pair<double, double>> c_of_eps;
  std::string note;
};

// Classifies the weighted volume growth at the pole. The growth notion in use
// is uniform over centers; radial models are only evaluated at the pole.
GrowthEvidence classify_volume_growth(const WeightedModel& model, std::span<const double> eps_grid,
                                      std::span<const double> r_grid);

// log-spaced grid of `count` radii in [a, b].
std::vector<double> log_grid(double a, double b, std::size_t count);

// Default classification grid on [0, R]: 24 log-spaced radii from min(2, 0.08 R).
std::vector<double> growth_radii(double R);

}  // namespace wmlab::geometry
