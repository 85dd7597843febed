#include "wmlab/discrete/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wmlab/core/error.hpp"
#include "wmlab/geometry/curvature.hpp"

namespace wmlab::discrete {

long long harmonic_multiplicity(int j, int q) {
  if (j < 0 || q < 1) throw ModelError("harmonic degree must be >= 0 and q >= 1");
  if (j == 0) return 1;
  // (2j+q-1) (j+q-2)! / (j! (q-1)!) = (2j+q-1)/j * C(j+q-2, j-1)
  long long c = 1;  // C(j+q-2, j-1), built incrementally
  for (int i = 1; i <= j - 1; ++i) c = c * (q - 1 + i) / i;
  return (2LL * j + q - 1) * c / j;
}

SectorSpec SectorSpec::make(int j, int q) {
  SectorSpec s;
  s.j = j;
  s.q = q;
  s.mu = static_cast<double>(j) * (j + q - 1);
  s.multiplicity = harmonic_multiplicity(j, q);
  return s;
}

double SectorSpec::potential(const WarpedProductModel& wp, double r) const {
  if (j == 0) return 0.0;
  const double e = wp.epsilon();
  return mu / (e * e) * std::exp(2.0 * wp.base().weight()(r) / q);
}

double SectorSpec::floor(const WarpedProductModel& wp, const Grid1D& grid) const {
  double m = std::numeric_limits<double>::infinity();
  for (double r : grid.nodes) m = std::min(m, potential(wp, r));
  return m;
}

SturmLiouvilleOp sector_operator(const WarpedProductModel& wp, int j, std::size_t intervals) {
  if (j < 0) throw ModelError("sector degree must be >= 0");
  const Grid1D grid = Grid1D::uniform(wp.base().radius(), intervals);
  std::vector<double> W(grid.nodes.size(), 0.0);
  if (j > 0) {
    const SectorSpec s = SectorSpec::make(j, wp.q());
    for (std::size_t i = 0; i < W.size(); ++i) W[i] = s.potential(wp, grid.nodes[i]);
  }
  return assemble(wp.base(), grid, W);
}

EigenDecomposition sector_spectrum(const WarpedProductModel& wp, int j, std::size_t k,
                                   std::size_t intervals, bool vectors) {
  return eigen_solve(sector_operator(wp, j, intervals), k, vectors);
}

std::vector<double> ProductSpectrum::lowest(std::size_t k) const {
  std::vector<double> out;
  for (const auto& e : entries) {
    for (long long m = 0; m < e.multiplicity && out.size() < k; ++m) out.push_back(e.value);
    if (out.size() >= k) break;
  }
  return out;
}

int ProductSpectrum::sector_of(std::size_t i) const {
  std::size_t seen = 0;
  for (const auto& e : entries) {
    seen += static_cast<std::size_t>(e.multiplicity);
    if (seen > i) return e.j;
  }
  return -1;
}

ProductSpectrum product_spectrum(const WarpedProductModel& wp, int j_max, std::size_t k,
                                 std::size_t intervals) {
  if (j_max < 0) throw ModelError("j_max must be >= 0");
  ProductSpectrum ps;
  ps.j_requested = j_max;
  auto add_sector = [&](int j) {
    const auto dec = sector_spectrum(wp, j, k, intervals);
    const SectorSpec s = SectorSpec::make(j, wp.q());
    for (std::size_t i = 0; i < dec.eigenvalues.size(); ++i) {
      ps.entries.push_back({dec.eigenvalues[i], j, i, s.multiplicity, 0.0});
    }
  };
  auto sort_entries = [&] {
    std::sort(ps.entries.begin(), ps.entries.end(), [](const auto& a, const auto& b) {
      if (a.value != b.value) return a.value < b.value;
      if (a.j != b.j) return a.j < b.j;
      return a.index < b.index;
    });
  };
  for (int j = 0; j <= j_max; ++j) add_sector(j);
  sort_entries();
  int j = j_max;
  // Sector lowest eigenvalues increase with j, so the merge is complete once
  // the next sector starts above the current k-th eigenvalue.
  while (true) {
    const auto low = ps.lowest(k);
    const double kth = low.size() < k ? std::numeric_limits<double>::infinity() : low.back();
    const auto next = sector_spectrum(wp, j + 1, 1, intervals);
    if (next.eigenvalues[0] > kth) break;
    ++j;
    add_sector(j);
    sort_entries();
    if (j > 100000) throw ConvergenceError("sector extension did not terminate");
  }
  ps.j_max = j;
  return ps;
}

CollapseReport verify_collapse_identities(const WarpedProductModel& wp,
                                          std::span<const double> eps_list, std::size_t k,
                                          std::size_t intervals, double tol) {
  if (eps_list.empty()) throw ModelError("empty epsilon list");
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    if (!(eps_list[i] < eps_list[i - 1])) throw ModelError("epsilon list must be strictly descending");
  }
  CollapseReport rep;
  rep.k = k;
  rep.lambda1.name = "lambda1_identity";
  rep.lambda1.coord_names = {"epsilon"};
  rep.convergence.name = "collapse_convergence";
  rep.convergence.coord_names = {"epsilon", "index"};

  const auto base = sector_spectrum(wp, 0, k, intervals);
  const double lambda_kf = base.eigenvalues[k - 1];
  const Grid1D grid = Grid1D::uniform(wp.base().radius(), intervals);
  const SectorSpec s1 = SectorSpec::make(1, wp.q());
  {
    // floor(eps) = mu_1 eps^-2 min e^{2f/q}  >  lambda_{k,f}
    const double m = s1.floor(wp.with_epsilon(1.0), grid);
    rep.crossover_floor = std::sqrt(m / lambda_kf);
  }
  {
    // lambda_1(sector 1) decreases in eps; bisect in log eps.
    auto above = [&](double eps) {
      return sector_spectrum(wp.with_epsilon(eps), 1, 1, intervals).eigenvalues[0] >= lambda_kf;
    };
    double lo = rep.crossover_floor, hi = rep.crossover_floor;
    while (above(hi)) hi *= 2.0;
    while (!above(lo)) lo /= 2.0;
    for (int it = 0; it < 60 && hi / lo > 1.0 + 1e-12; ++it) {
      const double mid = std::sqrt(lo * hi);
      (above(mid) ? lo : hi) = mid;
    }
    rep.crossover_exact = lo;
  }
  rep.lambda1.constants["lambda_1f"] = base.eigenvalues[0];
  rep.convergence.constants["lambda_kf"] = lambda_kf;
  rep.convergence.constants["crossover_floor"] = rep.crossover_floor;
  rep.convergence.constants["crossover_exact"] = rep.crossover_exact;
  rep.convergence.notes["crossover"] =
      "exact agreement is asserted for eps below crossover_exact, the largest eps at which the "
      "lowest sector-1 eigenvalue is still >= lambda_k,f; crossover_floor uses the potential "
      "floor mu_1 eps^-2 min e^{2f/q}";

  std::vector<double> prev_dev(k, std::numeric_limits<double>::infinity());
  for (double eps : eps_list) {
    const auto ps = product_spectrum(wp.with_epsilon(eps), 1, k, intervals);
    const auto low = ps.lowest(k);
    const double rel1 = std::abs(low[0] - base.eigenvalues[0]) / std::abs(base.eigenvalues[0]);
    rep.lambda1.add({eps}, low[0], base.eigenvalues[0], tol - rel1);
    for (std::size_t i = 0; i < k; ++i) {
      const double dev = base.eigenvalues[i] - low[i];
      rep.table.push_back({eps, i + 1, low[i], base.eigenvalues[i], dev, ps.sector_of(i)});
      const double rel = std::abs(dev) / std::max(std::abs(base.eigenvalues[i]), 1e-300);
      if (eps < rep.crossover_exact) {
        rep.convergence.add({eps, static_cast<double>(i + 1)}, low[i], base.eigenvalues[i],
                            tol - rel);
      }
      // lambda_{i,eps} <= lambda_{i,f} always (sector 0 is part of the merge).
      if (dev < -tol * std::abs(base.eigenvalues[i])) rep.monotone = false;
      if (dev > prev_dev[i] * (1.0 + 1e-12) + 1e-12 * std::abs(base.eigenvalues[i])) {
        rep.monotone = false;
      }
      prev_dev[i] = dev;
    }
  }
  rep.lambda1.finalize();
  rep.convergence.finalize();
  if (!rep.monotone) {
    rep.convergence.verdict = Verdict::fail;
    rep.convergence.warnings.push_back("deviation table is not monotone in epsilon");
  }
  if (rep.convergence.conclusive_count() == 0) {
    rep.convergence.warnings.push_back("no epsilon in the list lies below the crossover");
  }
  return rep;
}

double euclidean_ball_constant(int dim) {
  if (dim < 1) throw ModelError("dimension must be >= 1");
  const WeightedModel ball(dim, geometry::RadialWarpFunction::euclidean(),
                           geometry::WeightFunction::zero(), 1.0);
  double v[3];
  std::size_t n = 400;
  for (double& x : v) {
    x = eigen_solve(assemble(ball, n), 1, false).eigenvalues[0];
    n *= 2;
  }
  return richardson(v[0], v[1], v[2]).extrapolated;
}

BoundReport cheng_bound_check(const WeightedModel& model, int q, std::span<const double> R_list,
                              double h, std::optional<double> K) {
  BoundReport rep;
  rep.name = "cheng_bound";
  rep.coord_names = {"R", "kind"};
  const double k = K ? *K : geometry::estimate_K(model, q);
  const double m = model.n() + q;
  const double C = euclidean_ball_constant(model.n() + q);
  const double displayed = k / (4.0 * (m - 1.0));
  rep.constants["K"] = k;
  rep.constants["C"] = C;
  rep.constants["displayed_bound"] = displayed;
  rep.constants["standard_asymptote"] = (m - 1.0) * k / 4.0;
  rep.notes["asserted"] = "lambda_1f(B(R)) <= (n+q-1)K/4 + C/R^2 and decreasing in R";
  rep.notes["reported_only"] = "K/(4(n+q-1))";
  double prev = std::numeric_limits<double>::infinity();
  std::size_t exceeded = 0;
  double last = 0.0;
  for (double R : R_list) {
    if (!(R > 0.0) || R > model.radius() * (1.0 + 1e-12)) {
      throw ModelError("Cheng radii must lie in (0, radius]");
    }
    const auto ball = model.with_radius(R).with_bc(BoundaryCondition::dirichlet);
    const auto intervals = std::max<std::size_t>(256, static_cast<std::size_t>(std::ceil(R / h)));
    const double lambda = eigen_solve(assemble(ball, intervals), 1, false).eigenvalues[0];
    const double standard = (m - 1.0) * k / 4.0 + C / (R * R);
    rep.add({R, 0.0}, lambda, standard, standard - lambda);
    if (std::isfinite(prev)) rep.add({R, 1.0}, lambda, prev, prev - lambda);
    prev = lambda;
    last = lambda;
    if (lambda > displayed) ++exceeded;
  }
  rep.constants["lambda_1f_largest_R"] = last;
  rep.constants["displayed_form_exceeded"] = static_cast<double>(exceeded);
  if (exceeded > 0) {
    std::ostringstream msg;
    msg << "lambda_1f exceeds the displayed bound K/(4(n+q-1)) = " << displayed << " at " << exceeded
        << " radius/radii; the standard form (n+q-1)K/4 = " << (m - 1.0) * k / 4.0
        << " is consistent";
    rep.warnings.push_back(msg.str());
  }
  rep.finalize();
  return rep;
}

}  // namespace wmlab::discrete
