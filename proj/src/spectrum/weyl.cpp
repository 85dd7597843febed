#include "wmlab/spectrum/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "wmlab/core/error.hpp"
#include "wmlab/core/quadrature.hpp"
#include "wmlab/geometry/comparison.hpp"
#include "wmlab/geometry/curvature.hpp"
#include "wmlab/geometry/volume.hpp"
#include "wmlab/heat/bounds.hpp"

namespace wmlab::spectrum {

namespace {

double step(double x) { return x * x * x * (10.0 + x * (-15.0 + 6.0 * x)); }
double step1(double x) { return 30.0 * x * x * (1.0 - x) * (1.0 - x); }
double step2(double x) { return 60.0 * x * (2.0 * x - 1.0) * (x - 1.0); }

// Integral with an absolute floor tied to a coarse estimate of the whole
// integral, so pieces where the weight underflows do not stall the rule.
double scaled_integral(const std::function<double(double)>& f, double lo, double hi,
                       std::span<const double> breaks) {
  const int n = 2048;
  double scale = 0.0;
  for (int i = 0; i <= n; ++i) scale += std::abs(f(lo + (hi - lo) * i / n));
  scale *= (hi - lo) / n;
  return integrate_piecewise(f, lo, hi, breaks, {std::max(1e-300, 1e-14 * scale), 1e-11}).value;
}

// log of the weighted volume of the annulus [a, b], shifted by its own peak.
double log_volume(const WeightedModel& model, double a, double b) {
  double shift = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 256; ++i) shift = std::max(shift, model.log_density(a + (b - a) * i / 256.0));
  auto w = [&](double r) { return std::exp(model.log_density(r) - shift); };
  return shift + std::log(scaled_integral(w, a, b, {}));
}

}  // namespace

double Cutoff::value(double r) const {
  if (r <= 0.5 * R || r >= 4.0 * R) return 0.0;
  if (r < R) return scale * step((r - 0.5 * R) / (0.5 * R));
  if (r <= 2.0 * R) return scale;
  return scale * step((4.0 * R - r) / (2.0 * R));
}

double Cutoff::d1(double r) const {
  if (r <= 0.5 * R || r >= 4.0 * R) return 0.0;
  if (r < R) return scale * step1((r - 0.5 * R) / (0.5 * R)) / (0.5 * R);
  if (r <= 2.0 * R) return 0.0;
  return -scale * step1((4.0 * R - r) / (2.0 * R)) / (2.0 * R);
}

double Cutoff::d2(double r) const {
  if (r <= 0.5 * R || r >= 4.0 * R) return 0.0;
  if (r < R) return scale * step2((r - 0.5 * R) / (0.5 * R)) / (0.25 * R * R);
  if (r <= 2.0 * R) return 0.0;
  return scale * step2((4.0 * R - r) / (2.0 * R)) / (4.0 * R * R);
}

WeylQuotient weyl_quotient(const WeightedModel& model, const WeylSequenceSpec& spec) {
  const auto& chi = spec.cutoff;
  if (!(spec.lambda >= 0.0)) throw ModelError("Weyl target lambda must be >= 0");
  if (!(chi.R > 0.0) || chi.support_hi() >= model.radius()) {
    throw ModelError("Weyl cutoff support [R/2, 4R] must lie inside the domain");
  }
  const double k = std::sqrt(spec.lambda);
  const double lo = chi.support_lo(), hi = chi.support_hi();
  double shift = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 64; ++i) shift = std::max(shift, model.log_density(lo + (hi - lo) * i / 64.0));
  auto w = [&](double r) { return std::exp(model.log_density(r) - shift); };
  auto re = [&](double r) { return chi.d2(r) + model.drift_laplacian_radius(r) * chi.d1(r); };
  auto im = [&](double r) { return k * (2.0 * chi.d1(r) + model.drift_laplacian_radius(r) * chi.value(r)); };
  const double breaks[] = {chi.R, 2.0 * chi.R};
  const double num_re = scaled_integral([&](double r) { const double v = re(r); return v * v * w(r); },
                                        lo, hi, breaks);
  const double num_im = scaled_integral([&](double r) { const double v = im(r); return v * v * w(r); },
                                        lo, hi, breaks);
  const double den = scaled_integral([&](double r) { const double v = chi.value(r); return v * v * w(r); },
                                     lo, hi, breaks);
  WeylQuotient out;
  out.residual_norm = std::sqrt(num_re + num_im);
  out.norm = std::sqrt(den);
  out.quotient = out.residual_norm / out.norm;

  // a-priori consistency bound
  double sup_drift = 0.0;
  for (int i = 0; i <= 512; ++i)
    sup_drift = std::max(sup_drift, std::abs(model.drift_laplacian_radius(lo + (hi - lo) * i / 512.0)));
  const double R = chi.R, s = chi.scale;
  const double sup_res = s * (Cutoff::kD2Bound / (R * R) + 2.0 * k * Cutoff::kD1Bound / R +
                              sup_drift * (Cutoff::kD1Bound / R + k));
  const double log_v_support = log_volume(model, lo, hi);
  const double log_v_plateau = log_volume(model, R, 2.0 * R);
  out.a_priori_bound = sup_res * std::exp(0.5 * (log_v_support - log_v_plateau));
  return out;
}

double weyl_quotient(const WeightedModel& model, double lambda, double R) {
  return weyl_quotient(model, WeylSequenceSpec{lambda, Cutoff{R, 1.0}}).quotient;
}

EssentialSpectrumReport certify_interval(const WeightedModel& model, int q,
                                         std::span<const double> lambdas,
                                         std::span<const double> R_list) {
  EssentialSpectrumReport rep;
  const auto profile = geometry::asymptotic_nonnegativity_profile(model, q);
  rep.hypothesis_verified = profile.verdict;
  rep.advisory = !profile.verdict;
  std::vector<double> Rs(R_list.begin(), R_list.end());
  std::sort(Rs.begin(), Rs.end());
  rep.verdict = true;
  for (double lambda : lambdas) {
    WeylRow row;
    row.lambda = lambda;
    row.R = Rs;
    for (double R : Rs) row.quotient.push_back(weyl_quotient(model, lambda, R));
    row.monotone = true;
    for (std::size_t i = 1; i < Rs.size(); ++i) row.monotone &= row.quotient[i] < row.quotient[i - 1];
    row.enough_doublings = Rs.size() >= 4 && Rs.back() / Rs.front() >= 8.0 * (1 - 1e-12);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(Rs.size());
    for (std::size_t i = 0; i < Rs.size(); ++i) {
      const double x = std::log(Rs[i]), y = std::log(row.quotient[i]);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    row.decay_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    row.pass = row.monotone && row.enough_doublings && row.decay_exponent <= rep.max_exponent;
    rep.verdict &= row.pass;
    rep.rows.push_back(row);
  }
  rep.notes.push_back("policy: monotone decrease over every R step, >= 3 doublings, exponent <= -0.4");
  if (rep.advisory) {
    rep.notes.push_back("hypothesis violated: Ric_f^q is not asymptotically nonnegative (delta(R) = " +
                        std::to_string(profile.tail_value) + "); verdict is advisory");
  }
  return rep;
}

BoundReport delta_r_integral_check(const WeightedModel& model, double eps, double r1,
                                   std::span<const double> r2_list) {
  BoundReport rep;
  rep.name = "delta_r_integral";
  rep.coord_names = {"r2"};
  std::vector<double> Rs(r2_list.begin(), r2_list.end());
  std::sort(Rs.begin(), Rs.end());
  const double M = model.radius();
  const double scan_hi = 2.0 * Rs.back();
  if (scan_hi + 1.0 > M) throw ModelError("delta_r scan needs twice the largest r2 plus one inside the domain");
  if (!(r1 >= 0.0 && r1 < Rs.front())) throw ModelError("delta_r check needs 0 <= r1 < every r2");

  // Every radius the check reads, so each integral becomes a difference of prefix sums.
  const std::size_t scan = 400;
  std::vector<double> scan_pts;
  for (std::size_t i = 1; i <= scan; ++i) scan_pts.push_back(r1 + (scan_hi - r1) * double(i) / double(scan));
  std::vector<double> nodes{0.0, r1, M};
  for (double x = 1.0; x < M; x += 1.0) nodes.push_back(x);
  for (const auto* list : {&scan_pts, &Rs})
    for (double x : *list) {
      nodes.push_back(x);
      nodes.push_back(x + 1.0);
    }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto abs_drift = [&](double r) { return std::abs(model.drift_laplacian_radius(r)) * model.density(r); };
  auto dens = [&](double r) { return model.density(r); };
  std::vector<double> V(nodes.size(), 0.0), D(nodes.size(), 0.0);
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    const double a = nodes[j - 1], b = nodes[j];
    V[j] = V[j - 1] + integrate(dens, a, b, {std::max(1e-300, 1e-15 * V[j - 1]), 1e-11}).value;
    D[j] = D[j - 1] + integrate(abs_drift, a, b, {std::max(1e-300, 1e-15 * D[j - 1]), 1e-11}).value;
  }
  auto at = [&](const std::vector<double>& cum, double x) {
    return cum[std::size_t(std::lower_bound(nodes.begin(), nodes.end(), x) - nodes.begin())];
  };

  // Finite volume when the density is negligible at the end of the scan
  // relative to the whole domain's volume.
  const double total_volume = V.back();
  const bool finite = model.density(scan_hi) * scan_hi < 1e-8 * total_volume;
  rep.notes["case"] = finite ? "finite volume (b), weighted boundary area" : "infinite volume (a)";

  auto sides = [&](double r2) -> std::pair<double, double> {
    if (!finite) return {at(D, r2) - at(D, r1), eps * at(V, r2 + 1.0) + 2.0};
    return {D.back() - at(D, r2), eps * (total_volume - at(V, r2)) + 2.0 * model.sphere_area(r2)};
  };
  double K = r1;
  bool violated_at_end = false;
  for (std::size_t i = 0; i < scan; ++i) {
    const auto [l, r] = sides(scan_pts[i]);
    if (l > r) {
      K = scan_pts[i];
      violated_at_end = i + 1 == scan;
    }
  }
  for (double r2 : Rs) {
    const auto [l, r] = sides(r2);
    const bool beyond = r2 > K && !violated_at_end;
    rep.add({r2}, l, r, r - l, "validation", beyond);
  }
  if (violated_at_end) rep.add({scan_hi}, 1.0, 0.0, -1.0);
  rep.constants = {{"eps", eps}, {"r1", r1}, {"K", K}};
  if (finite) rep.constants["total_volume"] = total_volume;
  rep.warnings.push_back(finite ? "boundary term read as the weighted area of dB(r2)"
                                : "threshold K found by scanning r2 up to twice the largest listed radius");
  rep.finalize();
  return rep;
}

LpCertificate lp_hypothesis_certificate(const WeightedModel& model, int q) {
  LpCertificate cert;
  const double R = model.radius();
  for (double frac : {0.25, 0.5, 1.0})
    cert.K_table.emplace_back(frac * R, geometry::estimate_K(model.with_radius(frac * R), q));
  const double k1 = cert.K_table[0].second, k2 = cert.K_table[1].second, k3 = cert.K_table[2].second;
  cert.K_diverges = k2 > 1.5 * k1 + 1e-9 && k3 > 1.5 * k2 + 1e-9;
  if (cert.K_diverges) cert.reasons.push_back("Ric_f^q lower bound diverges with the radius (K table grows)");

  const std::vector<double> eps{0.05, 0.1, 0.5};
  const auto growth = geometry::classify_volume_growth(model, eps, geometry::growth_radii(R));
  cert.growth = geometry::to_string(growth.verdict);
  const bool growth_ok = growth.verdict == geometry::GrowthClass::subexponential ||
                         growth.verdict == geometry::GrowthClass::finite;
  if (!growth_ok) cert.reasons.push_back("volume growth is " + cert.growth);

  cert.subexp_integral = heat::verify_subexp_tail(model, 1.0, growth.verdict);
  if (cert.subexp_integral.verdict != Verdict::pass)
    cert.reasons.push_back("pole-centered integral with beta = 1 does not converge");

  cert.granted = cert.reasons.empty();
  std::string radius = std::to_string(R);
  cert.statement = cert.granted
                       ? "hypotheses of the L^p theorem verified at radius " + radius +
                             " (pole-centered); p-independence of the spectrum is an operator-theoretic "
                             "conclusion and is not asserted numerically"
                       : "hypotheses of the L^p theorem not verified at radius " + radius;
  return cert;
}

}  // namespace wmlab::spectrum
