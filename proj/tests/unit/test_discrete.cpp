#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "oracles.hpp"
#include "wmlab/core/error.hpp"
#include "wmlab/discrete/sectors.hpp"
#include "wmlab/geometry/catalog.hpp"

using namespace wmlab;
using namespace wmlab::discrete;
using geometry::RadialWarpFunction;
using geometry::WeightFunction;

namespace {

WeightedModel flat(int n, WeightFunction f, double R,
                   BoundaryCondition bc = BoundaryCondition::dirichlet) {
  return WeightedModel(n, RadialWarpFunction::euclidean(), std::move(f), R, bc);
}
WeightedModel hermite_model() {
  return flat(1, WeightFunction::quadratic(0.5), 12.0, BoundaryCondition::neumann);
}
double bessel_zero_sq(double nu) {
  const double z = boost::math::cyl_bessel_j_zero(nu, 1);
  return z * z;
}

}  // namespace

TEST_CASE("assembly is self-adjoint in the weighted inner product") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (const auto& nm : geometry::model_matrix(3, 1, 1.0, 6.0)) {
    const auto op = assemble(nm.config.model(), 200, [](double r) { return 1.0 + r; });
    std::vector<double> u(op.size()), v(op.size());
    for (auto& x : u) x = g(rng);
    for (auto& x : v) x = g(rng);
    const double a = op.inner(op.apply(u), v);
    const double b = op.inner(u, op.apply(v));
    CHECK(std::abs(a - b) <= 1e-12 * (std::abs(a) + std::abs(b)));
    // B = M^{1/2} A M^{-1/2}
    std::vector<double> e(op.size(), 0.0);
    e[5] = 1.0 / std::sqrt(op.mass[5]);
    const auto Ae = op.apply(e);
    CHECK(Ae[5] * std::sqrt(op.mass[5]) == doctest::Approx(op.diag[5]).epsilon(1e-13));
    CHECK(Ae[4] * std::sqrt(op.mass[4]) == doctest::Approx(op.offdiag[4]).epsilon(1e-13));
    CHECK(Ae[6] * std::sqrt(op.mass[6]) == doctest::Approx(op.offdiag[5]).epsilon(1e-13));
  }
}

TEST_CASE("Neumann operator annihilates constants") {
  const auto op = assemble(flat(2, WeightFunction::log_poly(1.0), 8.0, BoundaryCondition::neumann), 300);
  const std::vector<double> one(op.size(), 1.0);
  for (double y : op.apply(one)) CHECK(y == 0.0);
  CHECK(op.size() == 301);
}

TEST_CASE("assembly rejects bad input") {
  const auto m = flat(2, WeightFunction::zero(), 1.0);
  CHECK_THROWS_AS(assemble(m, 32), ModelError);
  CHECK_THROWS_AS(assemble(m, 100, [](double) { return -1.0; }), ModelError);
  Grid1D g = Grid1D::uniform(1.0, 100);
  g.nodes[3] = g.nodes[2];
  CHECK_THROWS_AS(assemble(m, g), ModelError);
  CHECK_THROWS_AS(assemble(m, Grid1D::uniform(2.0, 100)), ModelError);
}

TEST_CASE("tridiagonal eigensolver agrees with a dense solve") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 80 + 10 * trial;
    std::vector<double> d(n), e(n - 1);
    for (auto& x : d) x = 3 * u(rng);
    for (auto& x : e) x = u(rng);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) T(i, i) = d[i];
    for (int i = 0; i + 1 < n; ++i) T(i, i + 1) = T(i + 1, i) = e[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const auto te = tridiagonal_eigen(d, e, 20);
    for (int j = 0; j < 20; ++j) {
      CHECK(te.values[j] == doctest::Approx(es.eigenvalues()(j)).epsilon(1e-12).scale(1));
      const double dot = std::abs(Eigen::Map<const Eigen::VectorXd>(te.vectors[j].data(), n)
                                      .dot(es.eigenvectors().col(j)));
      CHECK(dot == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(te.residuals[j] <= 1e-10 * te.norm);
    }
    CHECK(sturm_count(d, e, es.eigenvalues()(10) + 1e-9) == 11);
  }
}

TEST_CASE("half-line Dirichlet at pi: first mode cos(r/2)") {
  const auto dec = eigen_solve(assemble(flat(1, WeightFunction::zero(), std::numbers::pi), 2000), 3);
  CHECK(dec.eigenvalues[0] == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(dec.eigenvalues[1] == doctest::Approx(2.25).epsilon(1e-6));
  CHECK(dec.eigenvalues[2] == doctest::Approx(6.25).epsilon(1e-5));
}

TEST_CASE("unit disk: Bessel zero with second-order convergence") {
  const auto disk = flat(2, WeightFunction::zero(), 1.0);
  const double exact = bessel_zero_sq(0.0);
  CHECK(exact == doctest::Approx(5.78319).epsilon(1e-6));
  double v[3];
  std::size_t n = 200;
  for (double& x : v) {
    x = eigen_solve(assemble(disk, n), 1).eigenvalues[0];
    n *= 2;
  }
  const auto rich = richardson(v[0], v[1], v[2]);
  CHECK(rich.order >= 1.9);
  CHECK(rich.order <= 2.1);
  CHECK(v[2] == doctest::Approx(exact).epsilon(1e-4));
  CHECK(rich.extrapolated == doctest::Approx(exact).epsilon(1e-7));
}

TEST_CASE("Ornstein-Uhlenbeck: even Hermite spectrum 0, 2, 4, 6") {
  const auto m = hermite_model();
  std::vector<std::vector<double>> v;
  std::size_t n = 600;
  for (int i = 0; i < 3; ++i, n *= 2) v.push_back(eigen_solve(assemble(m, n), 4).eigenvalues);
  for (int j = 0; j < 4; ++j) {
    const double e = richardson(v[0][j], v[1][j], v[2][j]).extrapolated;
    CHECK(e == doctest::Approx(2.0 * j).epsilon(1e-6).scale(1));
    if (j > 0) {
      const double order = richardson(v[0][j], v[1][j], v[2][j]).order;
      CHECK(order >= 1.9);
      CHECK(order <= 2.1);
    }
  }
  CHECK(std::abs(v[2][0]) <= 1e-9);
}

TEST_CASE("eigenvectors are weighted-orthonormal with small residuals") {
  for (const auto& nm : geometry::model_matrix(2, 1, 1.0, 20.0)) {
    const auto op = assemble(nm.config.model(), 800);
    const auto dec = eigen_solve(op, 60);
    CHECK_MESSAGE(gram_defect(dec) <= 1e-10, nm.name);
    for (double r : dec.residuals) CHECK(r <= 1e-10 * dec.norm);
    for (std::size_t i = 1; i < dec.eigenvalues.size(); ++i) {
      CHECK(dec.eigenvalues[i] > dec.eigenvalues[i - 1]);
    }
    // Nearly flat first mode on the heavily weighted models: lambda_1 ~ 0.
    CHECK(dec.eigenvalues[0] > -1e-12 * dec.norm);
  }
}

TEST_CASE("accuracy guard and determinism") {
  const auto op = assemble(flat(2, WeightFunction::zero(), 1.0), 100);
  CHECK_THROWS_AS(eigen_solve(op, 26), ModelError);
  const auto a = eigen_solve(op, 25);
  const auto b = eigen_solve(op, 25);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("harmonic multiplicities") {
  for (int q = 1; q <= 6; ++q) {
    for (int j = 0; j <= 12; ++j) CHECK(harmonic_multiplicity(j, q) == oracle::harmonic_dimension(j, q));
  }
  for (int j = 1; j <= 10; ++j) {
    CHECK(harmonic_multiplicity(j, 1) == 2);
    CHECK(harmonic_multiplicity(j, 2) == 2 * j + 1);
  }
  CHECK(SectorSpec::make(0, 3).mu == 0.0);
  CHECK(SectorSpec::make(2, 3).mu == 8.0);
}

TEST_CASE("sector spectra") {
  const WarpedProductModel wp(flat(2, WeightFunction::log_poly(1.0), 10.0), 2, 0.3);
  SUBCASE("sector 0 is the base operator bit for bit") {
    const auto s0 = sector_operator(wp, 0, 400);
    const auto b = assemble(wp.base(), 400);
    CHECK(s0.diag == b.diag);
    CHECK(s0.offdiag == b.offdiag);
    CHECK(sector_spectrum(wp, 0, 10, 400).eigenvalues == eigen_solve(b, 10, false).eigenvalues);
  }
  SUBCASE("positive potential floor and monotonicity in j") {
    const Grid1D grid = Grid1D::uniform(10.0, 400);
    double prev = -1.0;
    for (int j = 0; j <= 5; ++j) {
      const double l1 = sector_spectrum(wp, j, 1, 400).eigenvalues[0];
      CHECK(l1 > prev);
      CHECK(l1 >= SectorSpec::make(j, 2).floor(wp, grid));
      prev = l1;
    }
    // q = 2, j = 1: W = 2 eps^-2 e^f >= 2 eps^-2.
    CHECK(SectorSpec::make(1, 2).floor(wp, grid) == doctest::Approx(2.0 / 0.09));
  }
  SUBCASE("f = 0 sectors are constant shifts") {
    const WarpedProductModel flat_wp(flat(3, WeightFunction::zero(), 5.0), 1, 0.1);
    const auto s0 = sector_spectrum(flat_wp, 0, 8, 400).eigenvalues;
    const auto s1 = sector_spectrum(flat_wp, 1, 8, 400).eigenvalues;
    for (int i = 0; i < 8; ++i) CHECK(s1[i] == doctest::Approx(s0[i] + 100.0).epsilon(1e-12));
  }
}

TEST_CASE("merged q = 1 spectrum equals the dense tensor-grid spectrum") {
  for (const auto& nm : geometry::model_matrix(2, 1, 0.5, 3.0)) {
    const auto wp = nm.config.product();
    const auto ps = product_spectrum(wp, 0, 8, 64);
    REQUIRE(ps.j_max <= 6);
    const auto merged = ps.lowest(8);
    const auto dense = oracle::tensor_grid_spectrum(wp.base(), 0.5, 64, 13, 8);
    for (int i = 0; i < 8; ++i) {
      CHECK_MESSAGE(merged[i] == doctest::Approx(dense[i]).epsilon(1e-8), nm.name);
    }
  }
}

TEST_CASE("collapse identities") {
  const WarpedProductModel wp(flat(2, WeightFunction::log_poly(1.0), 10.0), 2, 1.0);
  SUBCASE("lambda_1 is independent of eps") {
    const std::vector<double> eps{1.0, 0.5, 0.1, 0.01};
    const auto rep = verify_collapse_identities(wp, eps, 2, 400);
    CHECK(rep.lambda1.verdict == Verdict::pass);
    for (const auto& s : rep.lambda1.samples) CHECK(s.lhs == s.rhs);
  }
  SUBCASE("eps sweep with k = 10 reaches exact agreement") {
    // R = 3 puts lambda_10 near 100, so the crossover falls inside the sweep.
    const WarpedProductModel small(flat(2, WeightFunction::log_poly(1.0), 3.0), 2, 1.0);
    const std::vector<double> eps{0.5, 0.2, 0.1, 0.05};
    const auto rep = verify_collapse_identities(small, eps, 10, 400);
    CHECK(rep.monotone);
    CHECK(rep.convergence.verdict == Verdict::pass);
    CHECK(rep.crossover_exact >= rep.crossover_floor);
    CHECK(rep.crossover_exact > 0.05);
    CHECK(rep.crossover_exact < 0.5);
    for (const auto& row : rep.table) {
      if (row.epsilon == 0.05) CHECK(row.lambda_eps == row.lambda_f);
    }
    bool some_gap = false;
    for (const auto& row : rep.table) some_gap |= row.epsilon == 0.5 && row.deviation > 0.0;
    CHECK(some_gap);
  }
  SUBCASE("f = 0 product agrees below the sector floor at finite eps") {
    const WarpedProductModel f0(flat(2, WeightFunction::zero(), 10.0), 1, 0.3);
    const auto base = sector_spectrum(f0, 0, 10, 400).eigenvalues;
    const auto low = product_spectrum(f0, 1, 10, 400).lowest(10);
    const double floor = 1.0 / 0.09;
    for (int i = 0; i < 10; ++i) {
      if (base[i] < floor) CHECK(low[i] == base[i]);
    }
  }
  SUBCASE("epsilon list must descend") {
    const std::vector<double> bad{0.1, 0.2};
    CHECK_THROWS_AS(verify_collapse_identities(wp, bad, 2, 400), ModelError);
  }
}

TEST_CASE("Cheng comparison") {
  SUBCASE("unit ball constants") {
    for (int dim : {2, 3, 4, 5}) {
      CHECK(euclidean_ball_constant(dim) ==
            doctest::Approx(bessel_zero_sq(dim / 2.0 - 1.0)).epsilon(1e-6));
    }
  }
  SUBCASE("hyperbolic three-space: lambda_1 -> 1 exceeds the displayed bound") {
    const WeightedModel h(3, RadialWarpFunction::hyperbolic(1.0), WeightFunction::zero(), 20.0);
    const std::vector<double> Rs{5.0, 10.0, 20.0};
    const auto rep = cheng_bound_check(h, 1, Rs);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.constants.at("K") == doctest::Approx(2.0));
    CHECK(rep.constants.at("displayed_bound") == doctest::Approx(2.0 / 12.0));
    CHECK(rep.constants.at("standard_asymptote") == doctest::Approx(1.5));
    // lambda_1(B(R)) = 1 + pi^2/R^2 on hyperbolic three-space.
    CHECK(rep.constants.at("lambda_1f_largest_R") ==
          doctest::Approx(1.0 + std::numbers::pi * std::numbers::pi / 400.0).epsilon(1e-4));
    CHECK(rep.constants.at("displayed_form_exceeded") == 3.0);
    CHECK(!rep.warnings.empty());
  }
  SUBCASE("Euclidean: lambda_1 R^2 is the ball constant") {
    const auto m = flat(3, WeightFunction::zero(), 8.0);
    const std::vector<double> Rs{2.0, 4.0, 8.0};
    const auto rep = cheng_bound_check(m, 1, Rs, 0.01, 0.0);
    CHECK(rep.verdict == Verdict::pass);
    for (const auto& s : rep.samples) {
      if (s.coords[1] == 0.0) {
        CHECK(s.lhs * s.coords[0] * s.coords[0] ==
              doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-4));
      }
    }
  }
  SUBCASE("log weight plane") {
    const auto m = flat(2, WeightFunction::log_poly(1.0), 20.0);
    const std::vector<double> Rs{2.0, 5.0, 10.0, 20.0};
    const auto rep = cheng_bound_check(m, 2, Rs);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.min_margin() > 0.0);
  }
}
