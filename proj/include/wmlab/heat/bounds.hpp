#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wmlab/core/bound_report.hpp"
#include "wmlab/geometry/volume.hpp"
#include "wmlab/heat/kernel.hpp"

namespace wmlab::heat {

// (r, t) samples for the localized bounds. The theorem radius is R = R̄/5, so
// r <= R/4 and t <= R^2/4 keep every ball inside the computational domain.
// Samples alternate between calibration and validation in a checkerboard.
struct SamplePoint {
  double r = 0.0;
  double t = 0.0;
  bool calibration = false;
};
struct SamplePlan {
  double theorem_radius = 0.0;
  std::vector<SamplePoint> points;
};
SamplePlan localized_plan(const SpectralKernel& spec, std::size_t nr = 6, std::size_t nt = 12);

struct GaussianBoundOptions {
  int q = 1;
  double K = 0.0;
  double delta = 1.0;    // C4 = 4 + delta (upper), C7 = 4 - delta/2 (lower)
  double safety = 2.0;   // calibrated constant is loosened by this factor
  // Held-out use: the constant from another model's calibration. Every sample
  // is then a validation sample.
  std::optional<double> constant;
};

// s = H V^{1/2}(pole, sqrt t) V^{1/2}(r, sqrt t) exp[lambda_1 t + r^2/(C4 t) - C5 sqrt(K t)] <= C3.
// C5 = sqrt(n + q). Margins are log(C3) - log(s). Constants: C3, C4, C5, lambda_1.
BoundReport verify_gaussian_upper(const SpectralKernel& spec, const SamplePlan& plan,
                                  const GaussianBoundOptions& opts);
// H >= C6 V^{-1/2} V^{-1/2} exp[-r^2/(C7 t) - C8 K t] with C8 = 1.
BoundReport verify_gaussian_lower(const SpectralKernel& spec, const SamplePlan& plan,
                                  const GaussianBoundOptions& opts);

// H <= C phi(pole)^2 max{t^{-(n+q)/2}, 1} e^{-beta1 r} e^{-(alpha+1) t}.
// alpha+1 is the decay rate of the calibration envelope over its two largest
// times; C is the envelope maximum loosened by `safety`. Constants: C, alpha.
BoundReport verify_phi_form_bound(const SpectralKernel& spec, int q, double beta1,
                                  const SamplePlan& plan, double safety = 2.0);

// Li-Yau with alpha > 1, K from the curvature module:
//   |grad u|^2/u^2 - alpha u_t/u <= (n+q) alpha^2/(2t) + (n+q) K alpha^2/(2(alpha-1)).
// Spatial derivatives use a 4th-order central stencil on grid nodes; the noise
// floor compares steps h and 2h and adds the rounding floor of the spectral sum
// and the eigenvector error. Samples with |margin| below the floor, or where
// that error exceeds 1% of u, are inconclusive.
struct LiYauWindow {
  double r_max = 0.0;  // 0 means R̄/2
  double t_min = 0.0;  // 0 means the kernel's reliable time
  double t_max = 0.0;  // 0 means (R̄/5)^2/4
  std::size_t nr = 12;
  std::size_t nt = 12;
};
BoundReport verify_li_yau(const SpectralKernel& spec, int q, double K, double alpha,
                          const LiYauWindow& window = {});
// Exact-Gaussian LHS and slack of the estimate (K = 0) in dimension n + q.
double li_yau_gaussian_lhs(int n, double alpha, double r, double t);
double li_yau_gaussian_slack(int n, int q, double alpha, double r, double t);

struct HarnackPair {
  double r1, t1, r2, t2;
};
// u(r1,t1) <= u(r2,t2) (t2/t1)^{(n+q) alpha/2} exp[alpha (r1-r2)^2/(4(t2-t1)) + A (t2-t1)],
// A = (n+q) K alpha / (2(alpha-1)). Margins in log scale.
BoundReport verify_harnack(const SpectralKernel& spec, int q, double K, double alpha,
                           std::span<const HarnackPair> pairs);
// Pairs on a small grid inside the Li-Yau window.
std::vector<HarnackPair> harnack_pair_grid(const SpectralKernel& spec);

// I(R) = phi(pole) int_{B(R)} phi(y) e^{-beta r(y)} e^{-f} dv over the R_list.
// Passes when the last Cauchy increment is below 1e-8. Only pole-centered
// integrals are computed; the report says so. The failure is hard only when
// the model was classified subexponential.
BoundReport verify_subexp_integral(const WeightedModel& model, double beta,
                                   std::span<const double> R_list, geometry::GrowthClass growth);

// Same with R in {R/8, R/4, R/2, R, 2R, 4R} on the model continued past its
// radius R; a model that does not extend (tabulated data) stops at R - 1.
BoundReport verify_subexp_tail(const WeightedModel& model, double beta, geometry::GrowthClass growth);

}  // namespace wmlab::heat
