#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wmlab/core/error.hpp"
#include "wmlab/geometry/catalog.hpp"
#include "wmlab/geometry/comparison.hpp"
#include "wmlab/geometry/curvature.hpp"
#include "wmlab/geometry/volume.hpp"
#include "wmlab/geometry/warped_oracle.hpp"

using namespace wmlab;
using namespace wmlab::geometry;

namespace {

WeightedModel flat(int n, WeightFunction f = WeightFunction::zero(), double R = 10.0) {
  return WeightedModel(n, RadialWarpFunction::euclidean(), std::move(f), R);
}
WeightedModel hyper(int n, WeightFunction f = WeightFunction::zero(), double R = 10.0) {
  return WeightedModel(n, RadialWarpFunction::hyperbolic(1.0), std::move(f), R);
}

}  // namespace

TEST_CASE("radial jets agree with central differences") {
  const double h = 1e-4;
  const std::vector<RadialWarpFunction> warps = {
      RadialWarpFunction::euclidean(), RadialWarpFunction::hyperbolic(0.7),
      RadialWarpFunction::from_params(WarpFamily::tabulated, tabulated_warp_params(6.0))};
  for (const auto& w : warps) {
    for (double r : {0.3, 1.0, 2.5, 4.0}) {
      const auto j = w.jet(r);
      CHECK(j.d1 == doctest::Approx((w(r + h) - w(r - h)) / (2 * h)).epsilon(1e-6));
      CHECK(j.d2 == doctest::Approx((w.jet(r + h).d1 - w.jet(r - h).d1) / (2 * h)).epsilon(1e-5));
    }
    CHECK(w(0.0) == doctest::Approx(0.0));
    CHECK(w.jet(0.0).d1 == doctest::Approx(1.0));
  }
  const std::vector<WeightFunction> weights = {WeightFunction::quadratic(0.3),
                                               WeightFunction::log_poly(1.2),
                                               WeightFunction::linear_asymptotic(0.5)};
  for (const auto& f : weights) {
    CHECK(f.jet(0.0).d1 == 0.0);
    for (double r : {0.3, 1.0, 2.5}) {
      CHECK(f.jet(r).d1 == doctest::Approx((f(r + h) - f(r - h)) / (2 * h)).epsilon(1e-7));
      CHECK(f.jet(r).d2 ==
            doctest::Approx((f.jet(r + h).d1 - f.jet(r - h).d1) / (2 * h)).epsilon(1e-7));
    }
  }
}

TEST_CASE("tabulated warp tracks its closed form") {
  const auto w = RadialWarpFunction::from_params(WarpFamily::tabulated, tabulated_warp_params(5.0));
  for (double r : {0.05, 0.5, 1.7, 3.3, 4.9}) {
    const double exact = r * std::sqrt(1 + r * r / 4);
    CHECK(w(r) == doctest::Approx(exact).epsilon(1e-9));
  }
  CHECK_THROWS_AS(w.jet(6.0), ModelError);
  CHECK_THROWS_AS(RadialWarpFunction::tabulated(0.1, {0.0, -0.1, 0.2, 0.3}), ModelError);
}

TEST_CASE("tabulated warp log stays finite at the pole") {
  const auto w = RadialWarpFunction::from_params(WarpFamily::tabulated, tabulated_warp_params(5.0));
  for (double r : {1e-300, 1e-20, 1e-12, 1e-7}) {
    CHECK(std::isfinite(w.log_value(r)));
    CHECK(w.log_value(r) == doctest::Approx(std::log(r)).epsilon(1e-9));
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(flat(0), ModelError);
  CHECK_THROWS_AS(WeightedModel(2, RadialWarpFunction::euclidean(), WeightFunction::zero(), -1.0),
                  ModelError);
  CHECK_THROWS_AS(WarpedProductModel(flat(2), 0, 0.5), ModelError);
  CHECK_THROWS_AS(WarpedProductModel(flat(2), 1, 0.0), ModelError);
  CHECK(unit_sphere_area(0) == doctest::Approx(2.0));
  CHECK(unit_sphere_area(1) == doctest::Approx(2 * std::numbers::pi));
  CHECK(unit_sphere_area(2) == doctest::Approx(4 * std::numbers::pi));
  const WarpedProductModel wp(flat(2, WeightFunction::log_poly(1.0)), 2, 0.3);
  for (double r : {0.0, 0.5, 3.0}) CHECK(wp.fiber_warp(r).value > 0.0);
}

TEST_CASE("curvature closed forms") {
  const std::vector<double> radii{0.5, 1.0, 2.0};
  SUBCASE("flat space is flat") {
    const auto p = eval_curvature(flat(3), 1, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      CHECK(p.ric_radial[i] == 0.0);
      CHECK(p.ric_tangential[i] == 0.0);
      CHECK(p.ricfq_radial[i] == 0.0);
    }
    CHECK(p.K == 0.0);
  }
  SUBCASE("hyperbolic space has Ric = -(n-1) g") {
    const auto c = curvature_at(hyper(3), 1, 1.0);
    CHECK(c.ric_radial == doctest::Approx(-2.0));
    CHECK(c.ric_tangential == doctest::Approx(-2.0));
  }
  SUBCASE("q-Bakry-Emery radial on f = r^2/2") {
    // Symbolic: f'' - f'^2/q at r=1, q=2.
    const auto c = curvature_at(flat(2, WeightFunction::quadratic(0.5)), 2, 1.0);
    CHECK(c.ricfq_radial == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c.ricf_radial == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.ricf_tangential == doctest::Approx(1.0).epsilon(1e-14));  // f' phi'/phi = r/r
  }
  SUBCASE("n = 1 has only the radial component") {
    const auto c = curvature_at(flat(1, WeightFunction::quadratic(0.5)), 1, 2.0);
    CHECK(c.ricfq_radial == doctest::Approx(1.0 - 4.0));
    CHECK(std::isnan(c.ric_tangential));
  }
  SUBCASE("outside the domain") {
    CHECK_THROWS_AS(curvature_at(flat(2), 1, 11.0), ModelError);
  }
}

TEST_CASE("f = 0 reduces Bakry-Emery quantities to Riemannian ones exactly") {
  for (const auto& nm : model_matrix(3, 2, 1.0, 5.0)) {
    if (nm.config.weight_family != WeightFamily::zero) continue;
    const auto p = eval_curvature(nm.config.model(), 2, uniform_radii(5.0, 40));
    for (std::size_t i = 0; i < p.radii.size(); ++i) {
      CHECK(p.ricf_radial[i] == p.ric_radial[i]);
      CHECK(p.ricfq_radial[i] == p.ric_radial[i]);
      CHECK(p.ricf_tangential[i] == p.ric_tangential[i]);
      CHECK(p.ricfq_tangential[i] == p.ric_tangential[i]);
    }
  }
}

TEST_CASE("tangential Ric_f^q does not depend on q") {
  const auto m = hyper(3, WeightFunction::log_poly(1.0));
  for (double r : {0.4, 1.3, 4.0}) {
    const double t1 = curvature_at(m, 1, r).ricfq_tangential;
    CHECK(curvature_at(m, 2, r).ricfq_tangential == t1);
    CHECK(curvature_at(m, 7, r).ricfq_tangential == t1);
  }
}

TEST_CASE("multiply warped formulas match the Christoffel oracle") {
  // Three-factor check independent of the warped-product reading of the formulas.
  for (const auto& nm : model_matrix(3, 2, 0.1, 5.0)) {
    const auto wp = nm.config.product();
    for (double r : {0.7, 2.2, 4.1}) {
      const auto ric = oracle::christoffel_ricci(wp.base(), 2,
                                                 [&](double s) { return wp.fiber_warp(s); }, r);
      const std::vector<WarpFactor> factors = {{2, wp.base().warp_jet(r)}, {2, wp.fiber_warp(r)}};
      const auto mw = multiply_warped_ricci(factors);
      const double scale = std::max(1.0, ric.cwiseAbs().maxCoeff());
      CHECK(std::abs(mw.radial - ric(0, 0)) <= 1e-10 * scale);
      CHECK(std::abs(mw.factor[0] - ric(1, 1)) <= 1e-10 * scale);
      CHECK(std::abs(mw.factor[0] - ric(2, 2)) <= 1e-10 * scale);
      CHECK(std::abs(mw.factor[1] - ric(3, 3)) <= 1e-10 * scale);
      CHECK(std::abs(mw.factor[1] - ric(4, 4)) <= 1e-10 * scale);
      for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
          if (i != j) CHECK(std::abs(ric(i, j)) <= 1e-10 * scale);
        }
      }
    }
  }
}

TEST_CASE("warped product Ricci identities") {
  SUBCASE("worked example on the Gaussian plane") {
    const WarpedProductModel wp(flat(2, WeightFunction::quadratic(0.5), 5.0), 2, 0.1);
    // 100 e^{1/2} + 1/2: f'^2 - Delta f = 1 - (1 + 1) = -1 at r = 1.
    const double expected = 100.0 * std::exp(0.5) + 0.5;
    CHECK(fiber_ricci_closed_form(wp, 1.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(165.372).epsilon(1e-5));
    const auto ric = oracle::christoffel_ricci(wp.base(), 2,
                                               [&](double s) { return wp.fiber_warp(s); }, 1.0);
    CHECK(ric(2, 2) == doctest::Approx(expected).epsilon(1e-12));
    const auto c = curvature_at(wp.base(), 2, 1.0);
    CHECK(ric(0, 0) == doctest::Approx(c.ricfq_radial).epsilon(1e-12));
    CHECK(ric(1, 1) == doctest::Approx(c.ricfq_tangential).epsilon(1e-12));
  }
  SUBCASE("unwarped product when f = 0") {
    const WarpedProductModel wp(hyper(3), 3, 0.5);
    CHECK(fiber_ricci_closed_form(wp, 1.3) == doctest::Approx(2.0 / 0.25));
  }
  SUBCASE("verify_prop31 passes on the model matrix") {
    const auto radii = uniform_radii(5.0, 50, 0.0);
    std::vector<double> interior(radii.begin(), radii.end() - 1);
    interior.push_back(4.99);
    for (int q : {1, 2, 3}) {
      for (double eps : {1.0, 0.1}) {
        for (const auto& nm : model_matrix(3, q, eps, 5.0)) {
          const auto rep = verify_prop31(nm.config.product(), interior, 1e-8);
          CHECK_MESSAGE(rep.verdict == Verdict::pass, nm.name);
          CHECK(rep.constants.at("max_abs_discrepancy") <= 1e-8);
        }
      }
    }
  }
  SUBCASE("n = 1 and the pole are rejected") {
    CHECK_THROWS_AS(verify_prop31(WarpedProductModel(flat(1), 1, 1.0), std::vector{1.0}, 1e-8),
                    ModelError);
    CHECK_THROWS_AS(verify_prop31(WarpedProductModel(flat(2), 1, 1.0), std::vector{0.0}, 1e-8),
                    ModelError);
  }
}

TEST_CASE("drift Laplacian of r") {
  CHECK(flat(3).drift_laplacian_radius(2.0) == doctest::Approx(1.0));
  CHECK(hyper(3).drift_laplacian_radius(1.0) == doctest::Approx(2.0 / std::tanh(1.0)));
  CHECK(hyper(3).drift_laplacian_radius(1.0) == doctest::Approx(2.626070).epsilon(1e-6));
  CHECK(flat(2, WeightFunction::quadratic(0.5)).drift_laplacian_radius(1.0) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(flat(2).drift_laplacian_radius(0.0), ModelError);
}

TEST_CASE("Laplacian comparison") {
  SUBCASE("flat plane with q = 1") {
    const auto rep = verify_laplacian_comparison(flat(2), 1, std::vector{0.5, 1.0, 4.0}, 0.0);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.samples[0].rhs == doctest::Approx(3.0 / 0.5));
    CHECK(rep.samples[0].margin == doctest::Approx(2.0 / 0.5));
  }
  SUBCASE("hyperbolic three-space at r = 1") {
    CHECK(riccati_bound(4.0, 2.0, 1.0) ==
          doctest::Approx(std::sqrt(8.0) / std::tanh(std::sqrt(0.5))));
    CHECK(riccati_bound(4.0, 2.0, 1.0) == doctest::Approx(4.645452).epsilon(1e-6));
    const auto rep = verify_laplacian_comparison(hyper(3), 1, std::vector{1.0});
    CHECK(rep.constants.at("K") == doctest::Approx(2.0));
    CHECK(rep.verdict == Verdict::pass);
  }
  SUBCASE("log weight plane with computed K") {
    const auto m = flat(2, WeightFunction::log_poly(1.0), 20.0);
    const auto rep = verify_laplacian_comparison(m, 2, uniform_radii(20.0, 400));
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.constants.at("K") > 0.0);
  }
  SUBCASE("coth bound is attained on hyperbolic space in the Riemannian limit") {
    // Rounding only; the largest values are ~ (n-1)/r at the first radius.
    CHECK(riemannian_comparison_gap(hyper(3), uniform_radii(10.0, 100)) <= 1e-9);
    CHECK(riemannian_comparison_gap(hyper(5), uniform_radii(10.0, 100)) <= 1e-9);
  }
  SUBCASE("small-r series branch is continuous") {
    for (double s : {0.5e-4, 0.99e-4, 1.01e-4, 2e-4}) {
      const long double x = s;  // alpha r
      const long double direct = std::sqrt(3.0L) * std::cosh(x) / std::sinh(x);
      CHECK(riccati_bound(3.0, 1.0, s * std::sqrt(3.0)) ==
            doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
    }
  }
}

TEST_CASE("weighted volume") {
  CHECK(weighted_volume(flat(3), 1.0) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-12));
  const auto gauss = WeightedModel(1, RadialWarpFunction::euclidean(), WeightFunction::quadratic(0.5),
                                   std::numeric_limits<double>::infinity());
  CHECK(weighted_volume(gauss, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(std::sqrt(2 * std::numbers::pi)).epsilon(1e-10));
  CHECK(weighted_volume(hyper(2), 1.0) ==
        doctest::Approx(2 * std::numbers::pi * (std::cosh(1.0) - 1.0)).epsilon(1e-12));
  const auto res = weighted_volume_with_error(hyper(3), 5.0);
  CHECK(res.error <= 1e-10 * res.value);
  CHECK_THROWS_AS(weighted_volume(flat(2), 11.0), ModelError);
}

TEST_CASE("volume comparison") {
  using P = std::pair<double, double>;
  SUBCASE("flat plane, q = 1: power law") {
    const std::vector<P> pairs{{1.0, 2.0}};
    const auto rep = verify_volume_comparison(flat(2), 1, pairs, 0.0);
    CHECK(rep.samples[0].lhs == doctest::Approx(4.0));
    CHECK(rep.samples[0].rhs == doctest::Approx(8.0));
    CHECK(rep.verdict == Verdict::pass);
  }
  SUBCASE("log weight plane and hyperbolic space") {
    const std::vector<P> pairs{{1.0, 3.0}, {1.0, 2.0}, {2.0, 9.0}};
    CHECK(verify_volume_comparison(flat(2, WeightFunction::log_poly(1.0)), 2, pairs).verdict ==
          Verdict::pass);
    const auto rep = verify_volume_comparison(hyper(3), 1, pairs);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.min_margin() > 0.0);
  }
  SUBCASE("frozen displayed-form constant reproduces") {
    CHECK(calibrate_volume_constant() == doctest::Approx(kFrozenVolumeConstant).epsilon(1e-12));
  }
  SUBCASE("slack shrinks toward the constant-curvature comparison model") {
    // f = 0: the bound tightens as q decreases and is attained in the
    // Riemannian limit (dimension n, K = n-1) on hyperbolic space.
    const std::vector<P> pairs{{1.0, 4.0}};
    const double m1 = verify_volume_comparison(hyper(3), 1, pairs).min_margin();
    const double m2 = verify_volume_comparison(hyper(3), 2, pairs).min_margin();
    const double m3 = verify_volume_comparison(hyper(3), 3, pairs).min_margin();
    CHECK(m1 < m2);
    CHECK(m2 < m3);
    const double exact = weighted_volume(hyper(3), 4.0) / weighted_volume(hyper(3), 1.0);
    CHECK(comparison_volume_ratio(2.0, 2.0, 1.0, 4.0) == doctest::Approx(exact).epsilon(1e-10));
  }
  SUBCASE("bad pairs") {
    const std::vector<P> bad{{0.5, 2.0}};
    CHECK_THROWS_AS(verify_volume_comparison(flat(2), 1, bad), ModelError);
  }
}

TEST_CASE("volume growth classification") {
  const std::vector<double> eps{0.05, 0.1, 0.5};
  const auto grid = log_grid(2.0, 60.0, 24);
  CHECK(classify_volume_growth(flat(3, WeightFunction::zero(), 60.0), eps, grid).verdict ==
        GrowthClass::subexponential);
  CHECK(classify_volume_growth(hyper(2, WeightFunction::zero(), 60.0), eps, grid).verdict ==
        GrowthClass::exponential);
  const auto ou = WeightedModel(1, RadialWarpFunction::euclidean(), WeightFunction::quadratic(0.5), 60.0);
  const auto ev = classify_volume_growth(ou, eps, grid);
  CHECK(ev.verdict == GrowthClass::finite);
  CHECK(ev.total_volume == doctest::Approx(std::sqrt(2 * std::numbers::pi)).epsilon(1e-8));
  CHECK(ev.c_of_eps.size() == 3);
}

TEST_CASE("asymptotic nonnegativity") {
  const auto a = asymptotic_nonnegativity_profile(flat(2, WeightFunction::log_poly(1.0), 2000.0), 1);
  CHECK(a.verdict);
  const auto ou = asymptotic_nonnegativity_profile(flat(1, WeightFunction::quadratic(0.5), 12.0), 1);
  CHECK_FALSE(ou.verdict);
  // delta = r^2/4 - 1/2 for f = r^2/2, q = 1... with f'^2/q = r^2: delta = r^2 - 1.
  CHECK(ou.tail_value == doctest::Approx(12.0 * 12.0 - 1.0));
  const auto h = asymptotic_nonnegativity_profile(hyper(2, WeightFunction::zero(), 50.0), 1);
  CHECK_FALSE(h.verdict);
  CHECK(h.tail_value == doctest::Approx(1.0));
}

TEST_CASE("radial Bochner identity") {
  const RadialTestFunction square = [](double r) { return std::array{r * r, 2 * r, 2.0, 0.0}; };
  const RadialTestFunction cosine = [](double r) {
    return std::array{std::cos(r), -std::sin(r), -std::cos(r), std::sin(r)};
  };
  const RadialTestFunction constant = [](double) { return std::array{3.0, 0.0, 0.0, 0.0}; };
  const auto radii = uniform_radii(4.0, 20);
  CHECK(verify_bochner_radial(flat(2), square, radii, 1e-12).verdict == Verdict::pass);
  CHECK(verify_bochner_radial(hyper(3), cosine, radii, 1e-10).verdict == Verdict::pass);
  CHECK(bochner_residual(hyper(3, WeightFunction::log_poly(1.0)), constant, 1.0) == 0.0);
  for (const auto& nm : model_matrix(3, 1, 1.0, 4.0)) {
    CHECK_MESSAGE(verify_bochner_radial(nm.config.model(), cosine, radii, 1e-9).verdict ==
                      Verdict::pass,
                  nm.name);
  }
}

TEST_CASE("mean inequality") {
  std::vector<MeanSample> s{{1, 1, 1, 1}, {3, -1, 2, 5}, {0, 0, 1, 1}};
  const auto rep = check_mean_inequality(s);
  CHECK(rep.verdict == Verdict::pass);
  // Stored as lhs = (x+y)^2/(n+q) <= rhs = x^2/n + y^2/q.
  CHECK(rep.samples[0].rhs == doctest::Approx(2.0));
  CHECK(rep.samples[0].margin == doctest::Approx(0.0));
  CHECK(rep.samples[1].rhs == doctest::Approx(4.5 + 0.2));
  CHECK(rep.samples[1].lhs == doctest::Approx(4.0 / 7.0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xy(-100, 100), nq(0.01, 20);
  std::vector<MeanSample> sweep;
  for (int i = 0; i < 20000; ++i) sweep.push_back({xy(rng), xy(rng), nq(rng), nq(rng)});
  // Equality cases x/n = y/q.
  for (int i = 0; i < 1000; ++i) {
    const double n = nq(rng), q = nq(rng), t = xy(rng);
    sweep.push_back({t * n, t * q, n, q});
  }
  CHECK(check_mean_inequality(sweep).verdict == Verdict::pass);
}
