// One line per acceptance criterion. Exit status 1 if any criterion fails.
//   acceptance <path to the wmlab executable>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wmlab/discrete/sectors.hpp"
#include "wmlab/geometry/catalog.hpp"
#include "wmlab/geometry/comparison.hpp"
#include "wmlab/geometry/curvature.hpp"
#include "wmlab/geometry/volume.hpp"
#include "wmlab/heat/averaging.hpp"
#include "wmlab/heat/bounds.hpp"
#include "wmlab/spectrum/weyl.hpp"

using namespace wmlab;
using geometry::BoundaryCondition;
using geometry::RadialWarpFunction;
using geometry::WarpedProductModel;
using geometry::WeightedModel;
using geometry::WeightFunction;
namespace fs = std::filesystem;

namespace {

// Tolerances, fixed here and nowhere else.
constexpr double kProp31Tol = 1e-8;
constexpr double kLambda1RelTol = 1e-10;
constexpr double kCollapseTol = 1e-10;
constexpr double kAveragingTol = 1e-3;
constexpr double kAveragingOrder = 1.8;
constexpr double kEuclideanRelTol = 1e-4;
constexpr double kVaradhanTol = 0.05;
constexpr double kCothTol = 1e-6;
constexpr double kSeparation = 10.0;
constexpr double kHermiteTol = 1e-6;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures += " [failed: " + what + "]";
    }
  }
};

std::string g(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

const std::vector<double> kEps = {1.0, 0.5, 0.1, 0.01};

WeightedModel flat(int n, double R, WeightFunction f = WeightFunction::zero(),
                   BoundaryCondition bc = BoundaryCondition::dirichlet) {
  return WeightedModel(n, RadialWarpFunction::euclidean(), std::move(f), R, bc);
}
WeightedModel hyperbolic(int n, double R) {
  return WeightedModel(n, RadialWarpFunction::hyperbolic(1.0), WeightFunction::zero(), R);
}
heat::SpectralKernel kernel(const WeightedModel& m, std::size_t intervals, double t_min) {
  heat::KernelOptions o;
  o.intervals = intervals;
  o.t_min = t_min;
  return heat::build_kernel(m, o);
}

// 1. Closed-form warped-product Ricci against the Christoffel-symbol oracle.
void prop31(Outcome& out) {
  const double R = 10.0;
  const auto radii = geometry::uniform_radii(R, 50);
  double worst = 0.0, worst_report = 0.0;
  int models = 0;
  for (int q : {1, 2, 3}) {
    for (double eps : {1.0, 0.1}) {
      for (const auto& nm : geometry::model_matrix(3, q, eps, R)) {
        const auto wp = nm.config.product();
        const auto& m = wp.base();
        const auto rep = geometry::verify_prop31(wp, radii, kProp31Tol);
        out.require(rep.verdict == Verdict::pass, nm.name + " report");
        worst_report = std::max(worst_report, rep.constants.at("max_abs_discrepancy"));
        for (double r : radii) {
          const auto ric = oracle::christoffel_ricci(m, q, [&](double s) { return wp.fiber_warp(s); }, r);
          const auto c = geometry::curvature_at(m, q, r);
          const double fiber = geometry::fiber_ricci_closed_form(wp, r);
          const int dim = 1 + (m.n() - 1) + q;
          for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
              double want = 0.0;
              if (i == j) want = i == 0 ? c.ricfq_radial : i < m.n() ? c.ricfq_tangential : fiber;
              worst = std::max(worst, std::abs(ric(i, j) - want));
            }
          }
        }
        ++models;
      }
    }
  }
  out.require(models == 72, "72 models");
  out.require(worst <= kProp31Tol, "oracle discrepancy");
  out.detail << models << " models x 50 radii, max |formula - Christoffel| = " << g(worst)
             << ", multiply-warped report max = " << g(worst_report) << " (tol " << g(kProp31Tol) << ")";
}

// 2. lambda_1 of the product equals lambda_1,f for every eps.
void lambda1(Outcome& out) {
  double worst = 0.0;
  int models = 0;
  for (const auto& nm : geometry::model_matrix(2, 2, 1.0, 10.0)) {
    const auto rep = discrete::verify_collapse_identities(nm.config.product(), kEps, 2, 400, kLambda1RelTol);
    out.require(rep.lambda1.verdict == Verdict::pass, nm.name);
    for (const auto& s : rep.lambda1.samples) worst = std::max(worst, std::abs(s.lhs - s.rhs) / std::abs(s.rhs));
    ++models;
  }
  out.detail << models << " models x eps {1, 0.5, 0.1, 0.01}, max relative gap = " << g(worst) << " (tol "
             << g(kLambda1RelTol) << ")";
}

// 3. Collapse: exact agreement below the crossover, monotone approach above it.
void collapse(Outcome& out) {
  const WarpedProductModel wp(flat(2, 3.0, WeightFunction::log_poly(1.0)), 2, 1.0);
  const std::vector<double> eps{0.5, 0.2, 0.1, 0.05};
  const auto rep = discrete::verify_collapse_identities(wp, eps, 10, 400, kCollapseTol);
  out.require(rep.convergence.verdict == Verdict::pass, "agreement below crossover");
  out.require(rep.monotone, "monotone approach");
  out.require(rep.crossover_exact > eps.back() && rep.crossover_exact < eps.front(), "crossover inside sweep");
  bool gap_above = false;
  for (const auto& row : rep.table) gap_above |= row.epsilon > rep.crossover_exact && row.deviation > 0.0;
  out.require(gap_above, "visible gap above crossover");
  out.detail << "k = 10, crossover eps = " << g(rep.crossover_exact) << " (floor " << g(rep.crossover_floor)
             << "), " << rep.convergence.conclusive_count() << " exact samples";
}

// 4. Fiber average of the 2D product heat flow equals the 1D weighted kernel.
void averaging(Outcome& out) {
  const double ts[] = {0.05, 0.2, 0.5};
  const WarpedProductModel wp(flat(2, 3.0, WeightFunction::log_poly(1.0)), 1, 0.5);
  heat::AveragingOptions o;
  o.radial_cells = {240, 480, 960};
  o.tol = kAveragingTol;
  o.min_order = kAveragingOrder;
  const auto start = std::chrono::steady_clock::now();
  const auto res = heat::verify_averaging_identity(wp, ts, o);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(res.report.verdict == Verdict::pass, "report");
  out.require(res.grid_errors.back() <= kAveragingTol, "finest error");
  out.require(res.order >= kAveragingOrder, "order");
  out.require(secs <= 300.0, "runtime");
  out.detail << "finest relative error " << g(res.grid_errors.back()) << " (tol " << g(kAveragingTol)
             << "), order " << g(res.order) << " (>= " << g(kAveragingOrder) << "), " << g(secs) << " s";
}

// 5. Spectral kernel against the Euclidean heat kernel.
void euclidean(Outcome& out) {
  double worst = 0.0;
  int samples = 0;
  for (int n : {1, 2, 3}) {
    const auto spec = kernel(flat(n, 6.0), 4800, 0.05);
    for (double t : {0.05, 0.1, 0.25, 0.5, 1.0}) {
      for (double r : {0.0, 0.25, 0.5, 0.7771, 1.0, 1.5}) {
        if (r * r / (4 * t) > 8.0) continue;
        const auto kv = heat::kernel_eval(spec, r, t);
        out.require(kv.reliable, "reliable sample");
        worst = std::max(worst, std::abs(kv.value / oracle::euclidean_heat_kernel(n, r, t) - 1.0));
        ++samples;
      }
    }
  }
  out.require(worst <= kEuclideanRelTol, "relative error");
  out.detail << "n = 1, 2, 3, " << samples << " samples with r^2/4t <= 8, max relative error " << g(worst)
             << " (tol " << g(kEuclideanRelTol) << ")";
}

// 6. Li-Yau on the matrix models; exact Gaussian slack.
void li_yau(Outcome& out) {
  heat::LiYauWindow w;
  w.t_min = 0.1;
  std::size_t conclusive = 0, samples = 0, violations = 0;
  for (const auto& nm : geometry::model_matrix(2, 1, 1.0, 20.0)) {
    const auto m = nm.config.model();
    const auto rep = heat::verify_li_yau(kernel(m, 4000, 0.04), 1, geometry::estimate_K(m, 1), 2.0, w);
    out.require(rep.verdict == Verdict::pass && rep.violations() == 0, nm.name);
    conclusive += rep.conclusive_count();
    samples += rep.samples.size();
    violations += rep.violations();
  }
  // Exact Gaussian: LHS from the spectral kernel, slack in closed form.
  const auto e2 = kernel(flat(2, 20.0), 4000, 0.04);
  const auto rep = heat::verify_li_yau(e2, 0, 0.0, 2.0, w);
  out.require(rep.verdict == Verdict::pass, "euclidean plane");
  double lhs_err = 0.0, slack_err = 0.0;
  for (const auto& s : rep.samples) {
    const double r = s.coords[0], t = s.coords[1];
    const double slack = heat::li_yau_gaussian_slack(2, 0, 2.0, r, t);
    const double closed = 2.0 / t * (2.0 - 1.0) + r * r / (4 * t * t);
    slack_err = std::max(slack_err, std::abs(slack - closed) / closed);
    out.require(slack >= 0.0, "slack region");
    if (r * r / (4 * t) <= 10) {
      const double exact = heat::li_yau_gaussian_lhs(2, 2.0, r, t);
      lhs_err = std::max(lhs_err, std::abs(s.lhs - exact) / (1.0 / t + std::abs(exact)));
    }
  }
  out.require(slack_err <= 1e-12, "closed-form slack");
  out.require(lhs_err <= 1e-3, "Gaussian LHS");
  out.detail << "12 models, " << conclusive << "/" << samples << " samples above the noise floor, " << violations
             << " violations; Gaussian LHS relative error " << g(lhs_err) << " (tol 0.001), closed-form slack error "
             << g(slack_err);
}

// 7. Calibrated bounds hold on held-out models; Varadhan slope.
void bounds(Outcome& out) {
  const auto cal = geometry::model_matrix(2, 1, 1.0, 20.0);
  const auto held = geometry::model_matrix(2, 1, 1.0, 25.0);
  int passed = 0;
  for (std::size_t i = 0; i < cal.size(); ++i) {
    const auto m = cal[i].config.model();
    const auto spec = kernel(m, 2000, 0.04);
    const auto plan = heat::localized_plan(spec);
    heat::GaussianBoundOptions o;
    o.q = 1;
    o.K = geometry::estimate_K(m, 1);
    const auto up = heat::verify_gaussian_upper(spec, plan, o);
    const auto lo = heat::verify_gaussian_lower(spec, plan, o);
    const auto phi = heat::verify_phi_form_bound(spec, 1, 1.0, plan);

    const auto hm = held[i].config.model();
    const auto hspec = kernel(hm, 2500, 0.04);
    const auto hplan = heat::localized_plan(hspec);
    heat::GaussianBoundOptions ho = o;
    ho.K = geometry::estimate_K(hm, 1);
    ho.constant = up.constants.at("C3");
    const auto hup = heat::verify_gaussian_upper(hspec, hplan, ho);
    ho.constant = lo.constants.at("C6");
    const auto hlo = heat::verify_gaussian_lower(hspec, hplan, ho);
    const bool ok = up.verdict == Verdict::pass && lo.verdict == Verdict::pass && phi.verdict == Verdict::pass &&
                    hup.verdict == Verdict::pass && hlo.verdict == Verdict::pass;
    out.require(ok, cal[i].name);
    passed += ok;
  }
  double worst = 0.0;
  const auto times = geometry::log_grid(1e-3, 1e-2, 12);
  const double radii[] = {0.2, 0.3};
  for (const auto& nm : geometry::model_matrix(2, 1, 1.0, 3.0)) {
    const auto rep = heat::verify_varadhan(kernel(nm.config.model(), 2000, 1e-3), radii, times, kVaradhanTol);
    out.require(rep.verdict == Verdict::pass && rep.conclusive_count() == 2, "Varadhan " + nm.name);
    for (const auto& s : rep.samples) worst = std::max(worst, kVaradhanTol - s.margin);
  }
  out.detail << passed << "/12 models pass upper, lower and phi-form with held-out R = 25;"
             << " Varadhan max |slope/d^2 - 1| = " << g(worst) << " (tol " << g(kVaradhanTol) << ")";
}

// 8. Laplacian and volume comparison; coth sharpness on hyperbolic space.
void comparison(Outcome& out) {
  using P = std::pair<double, double>;
  const std::vector<P> pairs{{1.0, 2.5}, {1.0, 5.0}, {1.0, 10.0}, {2.5, 5.0}, {2.5, 10.0}, {5.0, 10.0}};
  std::size_t samples = 0;
  for (int q : {1, 2}) {
    for (const auto& nm : geometry::model_matrix(2, q, 1.0, 10.0)) {
      const auto m = nm.config.model();
      const auto lap = geometry::verify_laplacian_comparison(m, q, geometry::uniform_radii(10.0, 200));
      const auto vol = geometry::verify_volume_comparison(m, q, pairs);
      out.require(lap.verdict == Verdict::pass && lap.violations() == 0, "laplacian " + nm.name);
      out.require(vol.verdict == Verdict::pass && vol.violations() == 0, "volume " + nm.name);
      samples += lap.samples.size() + vol.samples.size();
    }
  }
  const double gap3 = geometry::riemannian_comparison_gap(hyperbolic(3, 10.0), geometry::uniform_radii(10.0, 100));
  const double gap5 = geometry::riemannian_comparison_gap(hyperbolic(5, 10.0), geometry::uniform_radii(10.0, 100));
  out.require(std::max(gap3, gap5) <= kCothTol, "coth sharpness");
  out.detail << "24 models, " << samples << " samples, 0 violations; |coth bound - Delta r| on H^3, H^5 = "
             << g(std::max(gap3, gap5)) << " (tol " << g(kCothTol) << ")";
}

// 9. Weyl sequences, the Ornstein-Uhlenbeck control and Hermite eigenvalues.
void weyl(Outcome& out) {
  const double lambdas[] = {0.0, 0.5, 1.0, 2.0};
  const double Rs[] = {5.0, 10.0, 20.0, 40.0};
  int certified = 0;
  std::string names;
  for (const auto& p : geometry::preset_models()) {
    // Selected on the same long domain the sweep runs on.
    const auto m = p.config.model().with_radius(200.0);
    if (!geometry::asymptotic_nonnegativity_profile(m, p.config.q).verdict) continue;
    const auto rep = spectrum::certify_interval(m, p.config.q, lambdas, Rs);
    out.require(rep.verdict && !rep.advisory, p.name);
    certified += rep.verdict;
    names += (names.empty() ? "" : ", ") + p.name;
  }
  out.require(certified >= 2, "at least two certified presets");

  const double sweep[] = {10.0, 20.0, 40.0, 80.0};
  const double off[] = {0.7};
  const auto ou = spectrum::certify_interval(flat(1, 400.0, WeightFunction::quadratic(0.5)), 1, off, sweep);
  out.require(!ou.verdict, "OU control fails");
  double min_ou = 1e300, max_pass = 0.0;
  for (double q : ou.rows[0].quotient) min_ou = std::min(min_ou, q);
  for (double R : sweep) {
    max_pass = std::max(max_pass, spectrum::weyl_quotient(flat(2, 400.0, WeightFunction::log_poly(1.0)), 1.0, R));
  }
  out.require(min_ou >= kSeparation * max_pass, "separation");

  const auto m = flat(1, 12.0, WeightFunction::quadratic(0.5), BoundaryCondition::neumann);
  std::vector<std::vector<double>> v;
  for (std::size_t n : {600, 1200, 2400}) v.push_back(discrete::eigen_solve(discrete::assemble(m, n), 4).eigenvalues);
  double herr = 0.0;
  for (int j = 0; j < 4; ++j) {
    herr = std::max(herr, std::abs(discrete::richardson(v[0][j], v[1][j], v[2][j]).extrapolated - 2.0 * j));
  }
  out.require(herr <= kHermiteTol, "Hermite eigenvalues");
  out.detail << "certified on " << names << "; OU/pass ratio " << g(min_ou / max_pass) << " (>= "
             << g(kSeparation) << "); Hermite 0, 2, 4, 6 error " << g(herr) << " (tol " << g(kHermiteTol) << ")";
}

// 10. Cheng: lambda_1 -> 1 on hyperbolic 3-space, above the displayed bound.
void cheng(Outcome& out) {
  const double Rs[] = {5.0, 10.0, 20.0};
  const auto rep = discrete::cheng_bound_check(hyperbolic(3, 20.0), 1, Rs);
  const double lam = rep.constants.at("lambda_1f_largest_R");
  const double shown = rep.constants.at("displayed_bound");
  const double standard = rep.constants.at("standard_asymptote");
  out.require(rep.verdict == Verdict::pass, "standard form");
  out.require(lam > shown, "displayed bound exceeded");
  out.require(rep.constants.at("displayed_form_exceeded") == 3.0, "exceeded at every R");
  out.require(std::abs(lam - (1.0 + std::numbers::pi * std::numbers::pi / 400.0)) <= 1e-3, "lambda_1 value");
  out.detail << "lambda_1f(B(20)) = " << g(lam) << ", displayed K/(4(n+q-1)) = " << g(shown)
             << ", standard (n+q-1)K/4 = " << g(standard);
}

std::map<std::string, std::string> bundle(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().filename() == "metadata.json") continue;
    std::ifstream f(e.path(), std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    files[e.path().filename().string()] = s.str();
  }
  return files;
}

// 11. Two CLI runs give byte-identical bundles (metadata.json holds the timestamp).
void determinism(Outcome& out, const std::string& exe) {
  const fs::path root = fs::temp_directory_path() / "wmlab-acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  std::ofstream(root / "run.toml") << "[model]\nn = 2\nq = 2\nradius = 20\n\n[weight]\nfamily = log_poly\n"
                                      "params = [1]\n\n[run]\nsuites = [curvature, prop31, volume, eigs, heat, weyl]\n"
                                      "grid = 400\nsvg = true\n";
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    const std::string cmd = "\"" + exe + "\" run --config \"" + (root / "run.toml").string() + "\" --out \"" +
                            (root / ("out" + std::to_string(i))).string() + "\" > /dev/null 2>&1";
    codes[i] = std::system(cmd.c_str());
  }
  out.require(codes[0] == 0 && codes[1] == 0, "runs exit 0");
  if (!fs::exists(root / "out0") || !fs::exists(root / "out1")) {
    out.require(false, "bundles written");
    return;
  }
  const auto a = bundle(root / "out0"), b = bundle(root / "out1");
  std::size_t bytes = 0;
  for (const auto& [k, v] : a) bytes += v.size();
  out.require(a == b, "byte-identical");
  out.require(a.count("summary.json") == 1 && a.size() > 5, "bundle contents");
  out.detail << a.size() << " files, " << bytes << " bytes, identical across two runs";
  fs::remove_all(root);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <wmlab executable>\n");
    return 2;
  }
  const std::string exe = argv[1];
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"warped-product Ricci formulas", prop31},
      {"lambda_1 identity", lambda1},
      {"collapse convergence", collapse},
      {"fiber averaging identity", averaging},
      {"Euclidean kernel oracle", euclidean},
      {"Li-Yau estimate", li_yau},
      {"Gaussian and phi-form bounds, Varadhan", bounds},
      {"Laplacian and volume comparison", comparison},
      {"essential spectrum", weyl},
      {"Cheng discrepancy", cheng},
      {"report determinism", [&](Outcome& o) { determinism(o, exe); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures += std::string(" [exception: ") + e.what() + "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu %s  %s: %s%s (%.1f s)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.str().c_str(), o.failures.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
