#pragma once

#include <span>
#include <string>
#include <vector>

#include "wmlab/core/bound_report.hpp"
#include "wmlab/geometry/model.hpp"

namespace wmlab::spectrum {

using geometry::WeightedModel;

// Plateau cutoff: chi = 1 on [R, 2R], 0 outside [R/2, 4R], joined by the
// quintic smoothstep 6x^5 - 15x^4 + 10x^3, so chi is C^2 with
// |chi'| <= 3.75/R and |chi''| <= 23.1/R^2.
struct Cutoff {
  double R = 1.0;
  double scale = 1.0;  // chi -> scale * chi

  double value(double r) const;
  double d1(double r) const;
  double d2(double r) const;
  double support_lo() const { return 0.5 * R; }
  double support_hi() const { return 4.0 * R; }
  static constexpr double kD1Bound = 3.75;      // times 1/R
  static constexpr double kD2Bound = 23.09401076758503;  // 40/sqrt(3), times 1/R^2
};

struct WeylSequenceSpec {
  double lambda = 0.0;
  Cutoff cutoff;
};

struct WeylQuotient {
  double quotient = 0.0;
  double residual_norm = 0.0;  // relative to the log-shifted measure
  double norm = 0.0;
  double a_priori_bound = 0.0;  // sup|residual| sqrt(V(support)/V(plateau))
};

// u = chi e^{i sqrt(lambda) r}; the residual of (Delta_f + lambda) u is
//   e [chi'' + (Delta_f r) chi'] + i sqrt(lambda) e [2 chi' + (Delta_f r) chi],
// and Q = ||residual|| / ||u|| in L^2(e^{-f} dv). Real and imaginary parts
// are integrated separately with the weight shifted by its maximum on the
// support, which cancels in the ratio.
WeylQuotient weyl_quotient(const WeightedModel& model, const WeylSequenceSpec& spec);
double weyl_quotient(const WeightedModel& model, double lambda, double R);

struct WeylRow {
  double lambda = 0.0;
  std::vector<double> R;
  std::vector<double> quotient;
  double decay_exponent = 0.0;  // least-squares slope of log Q against log R
  bool monotone = false;
  bool enough_doublings = false;  // R_max / R_min >= 8
  bool pass = false;
};

struct EssentialSpectrumReport {
  std::vector<WeylRow> rows;
  bool hypothesis_verified = false;  // asymptotic nonnegativity of Ric_f^q
  bool verdict = false;              // consistent with [0, inf) in sigma_ess
  bool advisory = false;             // hypothesis not verified, verdict informational
  double max_exponent = -0.4;
  std::vector<std::string> notes;
};

// Pass per lambda iff Q decreases across every consecutive R, R spans at
// least three doublings and the fitted exponent is <= -0.4.
EssentialSpectrumReport certify_interval(const WeightedModel& model, int q,
                                         std::span<const double> lambdas,
                                         std::span<const double> R_list);

// Integral of |Delta_f r| over annuli. Infinite volume: for r2 in r2_list,
//   int_{B(r2) \ B(r1)} |Delta_f r| e^{-f} dv <= eps V_f(r2 + 1) + 2.
// Finite volume (weighted reading of the boundary term):
//   int_{M \ B(r2)} |Delta_f r| e^{-f} dv <= eps (V_f(M) - V_f(r2)) + 2 |dB(r2)|_f.
// The threshold K is found by scanning r2 up to twice the largest listed
// value: K is the first scan radius after the last violation. Listed r2 < K
// are inconclusive; no K inside the scan is a failure. coords {r2}.
BoundReport delta_r_integral_check(const WeightedModel& model, double eps, double r1,
                                   std::span<const double> r2_list);

struct LpCertificate {
  bool granted = false;
  std::string statement;
  std::vector<std::string> reasons;       // why denied (empty when granted)
  std::vector<std::pair<double, double>> K_table;  // (radius, K)
  bool K_diverges = false;
  std::string growth;
  BoundReport subexp_integral;
};

// Hypotheses of the L^p independence theorem at the model radius:
// (i) Ric_f^q >= -K on [0, R] with K stable under R/4, R/2, R,
// (ii) subexponential (or finite) weighted volume growth,
// (iii) convergence of the pole-centered integral with beta = 1.
// The conclusion itself is not checked numerically.
LpCertificate lp_hypothesis_certificate(const WeightedModel& model, int q);

}  // namespace wmlab::spectrum
