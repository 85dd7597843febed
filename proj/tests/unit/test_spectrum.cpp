#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wmlab/core/error.hpp"
#include "wmlab/spectrum/weyl.hpp"

using namespace wmlab;
using namespace wmlab::spectrum;
using geometry::RadialWarpFunction;
using geometry::WeightFunction;

namespace {

WeightedModel flat(int n, double R, WeightFunction f = WeightFunction::zero()) {
  return WeightedModel(n, RadialWarpFunction::euclidean(), std::move(f), R);
}
WeightedModel ou(double R) { return flat(1, R, WeightFunction::quadratic(0.5)); }
const double kRs[] = {5.0, 10.0, 20.0, 40.0};

}  // namespace

TEST_CASE("cutoff is C2 with the stated derivative bounds") {
  for (double R : {1.0, 7.0, 40.0}) {
    const Cutoff c{R, 1.0};
    double m1 = 0, m2 = 0;
    for (int i = 0; i <= 20000; ++i) {
      const double r = c.support_lo() + (c.support_hi() - c.support_lo()) * i / 20000.0;
      m1 = std::max(m1, std::abs(c.d1(r)));
      m2 = std::max(m2, std::abs(c.d2(r)));
      // derivative consistency by central differences
      const double h = 1e-5 * R;
      if (r - h > c.support_lo() && r + h < c.support_hi()) {
        CHECK(c.d1(r) == doctest::Approx((c.value(r + h) - c.value(r - h)) / (2 * h)).epsilon(1e-6).scale(1.0 / R));
        CHECK(c.d2(r) == doctest::Approx((c.d1(r + h) - c.d1(r - h)) / (2 * h)).epsilon(1e-5).scale(1.0 / (R * R)));
      }
    }
    CHECK(m1 * R <= Cutoff::kD1Bound * (1 + 1e-9));
    CHECK(m1 * R >= Cutoff::kD1Bound * (1 - 1e-3));
    CHECK(m2 * R * R <= Cutoff::kD2Bound * (1 + 1e-9));
    // Continuity of chi, chi', chi'' at the joins.
    for (double x : {0.5 * R, R, 2 * R, 4 * R}) {
      const double d = 1e-9 * R;
      CHECK(std::abs(c.value(x + d) - c.value(x - d)) <= 1e-12);
      CHECK(std::abs(c.d1(x + d) - c.d1(x - d)) * R <= 1e-6);
      CHECK(std::abs(c.d2(x + d) - c.d2(x - d)) * R * R <= 1e-6);
    }
  }
}

TEST_CASE("free line at lambda = 0: Q = ||chi''|| / ||chi|| scales like R^-2") {
  const auto m = flat(1, 500.0);
  // Closed form: int chi''^2 and int chi^2 scale as R^-3 and R.
  const double q5 = weyl_quotient(m, 0.0, 5.0), q10 = weyl_quotient(m, 0.0, 10.0);
  CHECK(q5 / q10 == doctest::Approx(4.0).epsilon(1e-9));
  // Independent evaluation by a plain midpoint rule.
  const Cutoff c{10.0, 1.0};
  double a = 0, b = 0;
  const int N = 400000;
  for (int i = 0; i < N; ++i) {
    const double r = c.support_lo() + (c.support_hi() - c.support_lo()) * (i + 0.5) / N;
    a += c.d2(r) * c.d2(r);
    b += c.value(r) * c.value(r);
  }
  CHECK(q10 == doctest::Approx(std::sqrt(a / b)).epsilon(1e-7));
}

TEST_CASE("quotient is scale invariant and respects the a-priori bound") {
  const auto m = flat(2, 200.0, WeightFunction::log_poly(1.0));
  for (double lambda : {0.0, 1.0, 4.0}) {
    for (double R : kRs) {
      const auto a = weyl_quotient(m, WeylSequenceSpec{lambda, Cutoff{R, 1.0}});
      const auto b = weyl_quotient(m, WeylSequenceSpec{lambda, Cutoff{R, 37.5}});
      CHECK(a.quotient == doctest::Approx(b.quotient).epsilon(1e-13));
      CHECK(a.quotient <= a.a_priori_bound);
    }
  }
  CHECK_THROWS_AS(weyl_quotient(m, 1.0, 50.0), ModelError);
}

TEST_CASE("certify the essential spectrum on asymptotically nonnegative models") {
  const double lambdas[] = {0.0, 0.5, 1.0, 2.0};
  const auto e3 = certify_interval(flat(3, 200.0), 1, lambdas, kRs);
  CHECK(e3.verdict);
  CHECK_FALSE(e3.advisory);
  const auto lw = certify_interval(flat(2, 200.0, WeightFunction::log_poly(1.0)), 1, lambdas, kRs);
  CHECK(lw.verdict);
  for (const auto& row : lw.rows) {
    CHECK(row.monotone);
    CHECK(row.decay_exponent <= -0.4);
  }
}

TEST_CASE("Ornstein-Uhlenbeck negative control") {
  // The separation needs the sweep to start where the passing quotient has
  // already dropped; at R = 5 the ratio is only about 0.74.
  const double sweep[] = {10.0, 20.0, 40.0, 80.0};
  const double off[] = {0.7};
  const auto rep = certify_interval(ou(400.0), 1, off, sweep);
  CHECK_FALSE(rep.verdict);
  CHECK(rep.advisory);
  CHECK_FALSE(rep.rows[0].monotone);
  double min_ou = 1e300;
  for (double q : rep.rows[0].quotient) min_ou = std::min(min_ou, q);
  CHECK(min_ou > 1.0);
  double max_pass = 0.0;
  for (double R : sweep) max_pass = std::max(max_pass, weyl_quotient(flat(2, 400.0, WeightFunction::log_poly(1.0)), 1.0, R));
  CHECK(min_ou > 10.0 * max_pass);
  // Independent midpoint-rule values at R = 10.
  CHECK(min_ou == doctest::Approx(12.137572343777833).epsilon(1e-6));
  CHECK(max_pass == doctest::Approx(0.3580970940488675).epsilon(1e-6));
  // Gaussian-weight plane fails too and is labelled as violating the hypothesis.
  const auto g = certify_interval(flat(2, 200.0, WeightFunction::quadratic(0.5)), 1, off, kRs);
  CHECK_FALSE(g.verdict);
  CHECK(g.advisory);
}

TEST_CASE("integral of |Delta_f r| over annuli") {
  // Euclidean plane: |Delta r| w = 2 pi, so the annulus integral is 2 pi (r2 - r1).
  const double r2s[] = {10.0, 20.0, 40.0};
  auto rep = delta_r_integral_check(flat(2, 200.0), 0.1, 1.0, r2s);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.samples.back().lhs == doctest::Approx(2 * std::numbers::pi * 39.0).epsilon(1e-10));
  CHECK(rep.constants["K"] < 40.0);

  rep = delta_r_integral_check(flat(1, 200.0), 0.1, 1.0, r2s);
  CHECK(rep.verdict == Verdict::pass);
  for (const auto& s : rep.samples) CHECK(s.lhs == 0.0);

  // log weight: |Delta_f r| w is the total variation of w = 2 pi r/(1+r^2).
  rep = delta_r_integral_check(flat(2, 200.0, WeightFunction::log_poly(1.0)), 0.1, 2.0, r2s);
  CHECK(rep.verdict == Verdict::pass);
  auto w = [](double r) { return 2 * std::numbers::pi * r / (1 + r * r); };
  CHECK(rep.samples.back().lhs == doctest::Approx(w(2.0) - w(40.0)).epsilon(1e-9));

  // Finite volume (Gaussian line): tail integral equals w(r2), below twice the boundary area.
  const auto o = ou(200.0);
  rep = delta_r_integral_check(o, 0.1, 1.0, r2s);
  CHECK(rep.notes["case"].find("finite") == 0);
  CHECK(rep.samples.front().lhs == doctest::Approx(o.density(10.0)).epsilon(1e-9));
  CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("L^p hypothesis certificate") {
  auto c = lp_hypothesis_certificate(flat(2, 60.0, WeightFunction::log_poly(1.0)), 2);
  CHECK(c.granted);
  CHECK(c.statement.find("not asserted") != std::string::npos);
  c = lp_hypothesis_certificate(WeightedModel(2, RadialWarpFunction::hyperbolic(1.0), WeightFunction::zero(), 60.0), 1);
  CHECK_FALSE(c.granted);
  CHECK(c.growth == "exponential");
  c = lp_hypothesis_certificate(flat(2, 60.0, WeightFunction::quadratic(0.5)), 1);
  CHECK_FALSE(c.granted);
  CHECK(c.K_diverges);
  CHECK(c.K_table[2].second > 10.0 * c.K_table[0].second);
}
