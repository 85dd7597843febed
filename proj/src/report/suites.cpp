#include "wmlab/report/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>

#include "wmlab/core/error.hpp"
#include "wmlab/discrete/eigensolver.hpp"
#include "wmlab/discrete/sectors.hpp"
#include "wmlab/geometry/catalog.hpp"
#include "wmlab/geometry/comparison.hpp"
#include "wmlab/geometry/curvature.hpp"
#include "wmlab/geometry/volume.hpp"
#include "wmlab/heat/averaging.hpp"
#include "wmlab/heat/bounds.hpp"
#include "wmlab/heat/kernel.hpp"
#include "wmlab/spectrum/weyl.hpp"

namespace wmlab::report {

namespace {

using geometry::WeightedModel;

std::string real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_real(x);
}

// Per-model state shared between suites.
struct Context {
  const RunConfig& cfg;
  geometry::ModelConfig mc;
  WeightedModel model;
  std::optional<double> K;
  std::unique_ptr<heat::SpectralKernel> kernel;
  std::optional<geometry::GrowthClass> growth;

  Context(const RunConfig& c, geometry::ModelConfig m) : cfg(c), mc(std::move(m)), model(mc.model()) {}

  int q() const { return mc.q; }
  double R() const { return mc.radius; }
  double curvature_K() {
    if (!K) K = geometry::estimate_K(model, q());
    return *K;
  }
  const heat::SpectralKernel& spec() {
    if (!kernel) {
      heat::KernelOptions o;
      o.intervals = cfg.grid;
      kernel = std::make_unique<heat::SpectralKernel>(heat::build_kernel(model, o));
    }
    return *kernel;
  }
  geometry::GrowthClass growth_class() {
    if (!growth) {
      const std::vector<double> eps{0.05, 0.1, 0.5};
      growth = geometry::classify_volume_growth(model, eps, geometry::growth_radii(R())).verdict;
    }
    return *growth;
  }
};

std::vector<double> fifty_radii(double R) { return geometry::uniform_radii(R, 50); }

void curvature_suite(Context& c, SuiteOutcome& out) {
  const auto radii = fifty_radii(c.R());
  const auto prof = geometry::eval_curvature(c.model, c.q(), radii);
  Table t{"profile", {"r", "ric_radial", "ric_tangential", "ricf_radial", "ricf_tangential",
                      "ricfq_radial", "ricfq_tangential"}, {}};
  for (std::size_t i = 0; i < radii.size(); ++i) {
    t.rows.push_back({real(radii[i]), real(prof.ric_radial[i]), real(prof.ric_tangential[i]),
                      real(prof.ricf_radial[i]), real(prof.ricf_tangential[i]),
                      real(prof.ricfq_radial[i]), real(prof.ricfq_tangential[i])});
  }
  out.tables.push_back(std::move(t));
  out.values["K"] = c.curvature_K();
  const auto asym = geometry::asymptotic_nonnegativity_profile(c.model, c.q());
  out.values["delta_at_radius"] = asym.tail_value;
  out.notes["asymptotically_nonnegative"] = asym.verdict ? "true" : "false";
}

void prop31_suite(Context& c, SuiteOutcome& out) {
  out.reports.push_back(geometry::verify_prop31(c.mc.product(), fifty_radii(c.R()), c.cfg.tol.value_or(1e-8)));
}

void comparison_suite(Context& c, SuiteOutcome& out) {
  const auto radii = fifty_radii(c.R());
  out.reports.push_back(geometry::verify_laplacian_comparison(c.model, c.q(), radii, c.curvature_K()));
  if (c.mc.weight_family == geometry::WeightFamily::zero) {
    out.values["riemannian_comparison_gap"] = geometry::riemannian_comparison_gap(c.model, radii);
  }
}

void volume_suite(Context& c, SuiteOutcome& out) {
  const double R = c.R();
  std::vector<std::pair<double, double>> pairs;
  for (double r : {1.0, R / 8, R / 4, R / 2})
    for (double S : {R / 4, R / 2, R})
      if (r >= 1.0 && r < S) pairs.emplace_back(r, S);
  if (pairs.empty()) {
    out.skipped.push_back("volume comparison needs radius > 1");
    return;
  }
  out.reports.push_back(geometry::verify_volume_comparison(c.model, c.q(), pairs, c.curvature_K()));
  out.notes["growth"] = geometry::to_string(c.growth_class());
}

void eigs_suite(Context& c, SuiteOutcome& out) {
  const auto op = discrete::assemble(c.model, c.cfg.grid);
  const std::size_t k = std::min<std::size_t>(10, op.size() / 4);
  const auto dec = discrete::eigen_solve(op, k, true);
  Table t{"eigenvalues", {"index", "lambda", "residual"}, {}};
  for (std::size_t i = 0; i < k; ++i)
    t.rows.push_back({std::to_string(i + 1), real(dec.eigenvalues[i]), real(dec.residuals[i])});
  out.tables.push_back(std::move(t));
  out.values["gram_defect"] = discrete::gram_defect(dec);
  const double R = c.R();
  const double Rs[] = {R / 4, R / 2, R};
  out.reports.push_back(discrete::cheng_bound_check(c.model, c.q(), Rs, R / double(c.cfg.grid), c.curvature_K()));
}

void collapse_suite(Context& c, SuiteOutcome& out) {
  auto rep = discrete::verify_collapse_identities(c.mc.product(), c.cfg.epsilons, 10, c.cfg.grid,
                                                  c.cfg.tol.value_or(1e-10));
  out.values["crossover_floor"] = rep.crossover_floor;
  out.values["crossover_exact"] = rep.crossover_exact;
  out.notes["monotone"] = rep.monotone ? "true" : "false";
  Table t{"collapse", {"epsilon", "index", "lambda_eps", "lambda_f", "deviation", "sector"}, {}};
  for (const auto& row : rep.table) {
    t.rows.push_back({real(row.epsilon), std::to_string(row.index), real(row.lambda_eps),
                      real(row.lambda_f), real(row.deviation), std::to_string(row.sector)});
  }
  out.tables.push_back(std::move(t));
  out.reports.push_back(std::move(rep.lambda1));
  out.reports.push_back(std::move(rep.convergence));
}

void heat_suite(Context& c, SuiteOutcome& out) {
  const auto& spec = c.spec();
  out.values["t_reliable"] = spec.t_reliable;
  out.values["eigenpairs"] = static_cast<double>(spec.dec.eigenvalues.size());
  const double t0 = std::max(spec.t_reliable, 0.01);
  const auto times = geometry::log_grid(t0, c.R() * c.R() / 16.0, 8);
  out.reports.push_back(heat::verify_mass_positivity(spec, times));
  try {
    heat::KernelOptions o;
    o.intervals = c.cfg.grid;
    out.reports.push_back(heat::verify_semigroup_crosscheck(c.model, o, t0, 2.0 * t0, 2000, 1e-5).report);
  } catch (const ModelError& e) {
    out.skipped.push_back(std::string("semigroup crosscheck: ") + e.what());
  }
  // Varadhan needs r^2 / 4t large; the run kernel cannot reach small enough
  // t, so use a fine kernel on a small ball (the limit is local).
  heat::KernelOptions local;
  local.intervals = 2000;
  const double a = std::min(c.R(), 3.0);
  const double s2 = a * a / 9.0;  // small domains scale the whole setup
  local.t_min = 1e-3 * s2;
  const auto near = heat::build_kernel(c.model.with_radius(a), local);
  const double radii[] = {a / 15.0, a / 10.0};
  out.reports.push_back(heat::verify_varadhan(near, radii, geometry::log_grid(1e-3 * s2, 1e-2 * s2, 12)));
  if (c.cfg.averaging) {
    if (c.q() != 1) {
      out.skipped.push_back("averaging identity needs q = 1");
    } else {
      const double ts[] = {0.05, 0.2, 0.5};
      auto res = heat::verify_averaging_identity(c.mc.product(), ts);
      out.values["averaging_order"] = res.order;
      out.reports.push_back(std::move(res.report));
    }
  }
}

void bounds_suite(Context& c, SuiteOutcome& out) {
  const auto& spec = c.spec();
  const auto plan = heat::localized_plan(spec);
  heat::GaussianBoundOptions o;
  o.q = c.q();
  o.K = c.curvature_K();
  // Calibrated constants: failures are warnings for the exit code.
  auto soft = [](BoundReport r) {
    r.hard = false;
    return r;
  };
  out.reports.push_back(soft(heat::verify_gaussian_upper(spec, plan, o)));
  out.reports.push_back(soft(heat::verify_gaussian_lower(spec, plan, o)));
  out.reports.push_back(soft(heat::verify_phi_form_bound(spec, c.q(), 1.0, plan)));
  const double R = c.R();
  if (R > 8.0) out.reports.push_back(heat::verify_subexp_tail(c.model, 1.0, c.growth_class()));
}

void liyau_suite(Context& c, SuiteOutcome& out) {
  out.reports.push_back(heat::verify_li_yau(c.spec(), c.q(), c.curvature_K(), 2.0));
}

void harnack_suite(Context& c, SuiteOutcome& out) {
  const auto& spec = c.spec();
  out.reports.push_back(heat::verify_harnack(spec, c.q(), c.curvature_K(), 2.0, heat::harnack_pair_grid(spec)));
}

void weyl_suite(Context& c, SuiteOutcome& out) {
  const double R = c.R();
  const double lambdas[] = {0.0, 0.5, 1.0, 2.0};
  const double Rs[] = {R / 40, R / 20, R / 10, R / 5};
  const auto es = spectrum::certify_interval(c.model, c.q(), lambdas, Rs);
  Table t{"weyl_quotients", {"lambda", "R", "quotient"}, {}};
  BoundReport decay;
  decay.name = "weyl_decay";
  decay.coord_names = {"lambda"};
  decay.hard = false;
  for (const auto& row : es.rows) {
    for (std::size_t i = 0; i < row.R.size(); ++i)
      t.rows.push_back({real(row.lambda), real(row.R[i]), real(row.quotient[i])});
    // A non-monotone row fails regardless of its slope.
    const double margin = row.monotone && row.enough_doublings ? es.max_exponent - row.decay_exponent : -1.0;
    decay.add({row.lambda}, row.decay_exponent, es.max_exponent, margin);
  }
  decay.constants["max_exponent"] = es.max_exponent;
  decay.notes["policy"] = es.notes.front();
  decay.notes["hypothesis"] = es.hypothesis_verified ? "verified" : "violated (advisory verdict)";
  for (std::size_t i = 1; i < es.notes.size(); ++i) decay.warnings.push_back(es.notes[i]);
  decay.finalize();
  out.tables.push_back(std::move(t));
  out.reports.push_back(std::move(decay));
  out.notes["essential_spectrum"] = es.verdict ? "consistent with [0,inf) in sigma_ess" : "not certified";

  if (R > 8.0) {
    // The threshold K can lie past R (flat R^3: K ~ 29), so sweep on the
    // model continued to 4R + 1 when the families allow it.
    std::optional<WeightedModel> wide;
    try {
      wide = c.model.with_radius(4.0 * R + 1.0);
    } catch (const ModelError&) {
    }
    const double far[] = {R / 4, R / 2, R, 2 * R};
    const double near[] = {R / 8, R / 4, (R - 1.0) / 2};
    auto d = wide ? spectrum::delta_r_integral_check(*wide, 0.1, 1.0, far)
                  : spectrum::delta_r_integral_check(c.model, 0.1, 1.0, near);
    d.notes["domain"] = wide ? "model continued to 4R + 1" : "tabulated model, r2 up to (R - 1)/2";
    d.hard = false;
    out.reports.push_back(std::move(d));
  }
}

void lp_suite(Context& c, SuiteOutcome& out) {
  if (c.R() <= 8.0) {
    out.skipped.push_back("L^p certificate needs radius > 8");
    return;
  }
  auto cert = spectrum::lp_hypothesis_certificate(c.model, c.q());
  out.values["granted"] = cert.granted ? 1.0 : 0.0;
  out.notes["statement"] = cert.statement;
  out.notes["growth"] = cert.growth;
  for (std::size_t i = 0; i < cert.reasons.size(); ++i) out.notes["reason_" + std::to_string(i + 1)] = cert.reasons[i];
  Table t{"K_table", {"radius", "K"}, {}};
  for (auto [r, k] : cert.K_table) t.rows.push_back({real(r), real(k)});
  out.tables.push_back(std::move(t));
  cert.subexp_integral.hard = false;
  out.reports.push_back(std::move(cert.subexp_integral));
}

using SuiteFn = std::function<void(Context&, SuiteOutcome&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r{
      {"curvature", curvature_suite}, {"prop31", prop31_suite}, {"comparison", comparison_suite},
      {"volume", volume_suite},       {"eigs", eigs_suite},     {"collapse", collapse_suite},
      {"heat", heat_suite},           {"bounds", bounds_suite}, {"liyau", liyau_suite},
      {"harnack", harnack_suite},     {"weyl", weyl_suite},     {"lp-cert", lp_suite}};
  return r;
}

}  // namespace

bool SuiteOutcome::failed() const {
  if (!error.empty()) return true;
  return std::any_of(reports.begin(), reports.end(),
                     [](const BoundReport& r) { return r.hard && r.verdict == Verdict::fail; });
}

Table report_table(const BoundReport& rep) {
  Table t;
  t.name = rep.name;
  t.header = rep.coord_names;
  for (const char* h : {"lhs", "rhs", "margin", "split", "conclusive"}) t.header.push_back(h);
  for (const auto& s : rep.samples) {
    std::vector<std::string> row;
    for (double x : s.coords) row.push_back(real(x));
    row.push_back(real(s.lhs));
    row.push_back(real(s.rhs));
    row.push_back(real(s.margin));
    row.push_back(s.split);
    row.push_back(s.conclusive ? "1" : "0");
    t.rows.push_back(std::move(row));
  }
  return t;
}

RunResult run(const RunConfig& cfg) {
  RunResult res;
  // The output location is not part of the computation; it goes to metadata.json.
  RunConfig resolved = cfg;
  resolved.out.clear();
  res.config_text = resolved.to_text();
  std::vector<geometry::NamedModel> models;
  if (cfg.matrix) {
    models = geometry::model_matrix(cfg.model.n, cfg.model.q, cfg.model.epsilon, cfg.model.radius);
  } else {
    models.push_back({"model", cfg.model});
  }
  for (const auto& nm : models) {
    Context ctx(cfg, nm.config);
    for (const auto& name : cfg.suites) {
      SuiteOutcome out;
      out.suite = name;
      out.model = nm.name;
      try {
        registry().at(name)(ctx, out);
      } catch (const ModelError& e) {
        out.skipped.push_back(e.what());
      } catch (const Error& e) {
        out.error = e.what();
      }
      if (out.failed()) res.exit_code = 1;
      res.outcomes.push_back(std::move(out));
    }
  }
  return res;
}

}  // namespace wmlab::report
