#include "wmlab/heat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <limits>

#include "wmlab/core/error.hpp"
#include "wmlab/core/quadrature.hpp"
#include "wmlab/heat/volume_normalizer.hpp"

namespace wmlab::heat {

namespace {

double log_ball(const WeightedModel& m, double r, double rho) { return std::log(ball_volume(m, r, rho)); }

std::vector<double> geometric(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = n == 1 ? 0.0 : double(i) / double(n - 1);
    out[i] = a * std::pow(b / a, s);
  }
  return out;
}

// log s(r, t) without the constant, for the upper and lower Gaussian forms.
struct Sampled {
  SamplePoint p;
  double log_h = 0.0;
  double log_v = 0.0;  // 0.5 (log V(pole, sqrt t) + log V(r, sqrt t))
  bool reliable = false;
};

std::vector<Sampled> sample_kernel(const SpectralKernel& spec, const SamplePlan& plan) {
  std::vector<Sampled> out;
  for (const auto& p : plan.points) {
    Sampled s{p};
    const auto kv = kernel_eval(spec, p.r, p.t);
    s.reliable = kv.reliable && kv.value > 0.0;
    s.log_h = kv.value > 0.0 ? std::log(kv.value) : 0.0;
    const double rho = std::sqrt(p.t);
    s.log_v = 0.5 * (log_ball(spec.model, 0.0, rho) + log_ball(spec.model, p.r, rho));
    out.push_back(s);
  }
  return out;
}

}  // namespace

SamplePlan localized_plan(const SpectralKernel& spec, std::size_t nr, std::size_t nt) {
  SamplePlan plan;
  const double R = spec.model.radius() / 5.0;
  plan.theorem_radius = R;
  const double t_hi = R * R / 4.0;
  const double t_lo = std::max(spec.t_reliable, t_hi / 100.0);
  const auto ts = geometric(t_lo, t_hi, nt);
  for (std::size_t i = 0; i < nr; ++i) {
    const double r = (R / 4.0) * double(i) / double(nr - 1);
    for (std::size_t j = 0; j < nt; ++j) plan.points.push_back({r, ts[j], (i + j) % 2 == 0});
  }
  return plan;
}

BoundReport verify_gaussian_upper(const SpectralKernel& spec, const SamplePlan& plan,
                                  const GaussianBoundOptions& o) {
  BoundReport rep;
  rep.name = "gaussian_upper";
  rep.coord_names = {"r", "t"};
  const int n = spec.model.n();
  const double C4 = 4.0 + o.delta;
  const double C5 = std::sqrt(double(n + o.q));
  const double lambda1 = spec.dec.eigenvalues[0];
  const auto samples = sample_kernel(spec, plan);
  std::vector<double> log_s(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    log_s[i] = s.log_h + s.log_v + lambda1 * s.p.t + s.p.r * s.p.r / (C4 * s.p.t) -
               C5 * std::sqrt(o.K * s.p.t);
  }
  double log_c3;
  if (o.constant) {
    log_c3 = std::log(*o.constant);
  } else {
    log_c3 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].p.calibration && samples[i].reliable) log_c3 = std::max(log_c3, log_s[i]);
    }
    log_c3 += std::log(o.safety);
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const bool cal = s.p.calibration && !o.constant;
    rep.add({s.p.r, s.p.t}, log_s[i], log_c3, log_c3 - log_s[i], cal ? "calibration" : "validation",
            s.reliable);
  }
  rep.constants = {{"C3", std::exp(log_c3)}, {"C4", C4}, {"C5", C5}, {"lambda_1", lambda1},
                   {"K", o.K}, {"theorem_radius", plan.theorem_radius}};
  rep.notes["calibration"] = o.constant ? "held-out: constant supplied" : "checkerboard split";
  rep.finalize();
  return rep;
}

BoundReport verify_gaussian_lower(const SpectralKernel& spec, const SamplePlan& plan,
                                  const GaussianBoundOptions& o) {
  BoundReport rep;
  rep.name = "gaussian_lower";
  rep.coord_names = {"r", "t"};
  const double C7 = 4.0 - 0.5 * o.delta;
  const double C8 = 1.0;
  const auto samples = sample_kernel(spec, plan);
  // H V V exp[r^2/(C7 t) + C8 K t] >= C6
  std::vector<double> log_s(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    log_s[i] = s.log_h + s.log_v + s.p.r * s.p.r / (C7 * s.p.t) + C8 * o.K * s.p.t;
  }
  double log_c6;
  if (o.constant) {
    log_c6 = std::log(*o.constant);
  } else {
    log_c6 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].p.calibration && samples[i].reliable) log_c6 = std::min(log_c6, log_s[i]);
    }
    log_c6 -= std::log(o.safety);
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const bool cal = s.p.calibration && !o.constant;
    rep.add({s.p.r, s.p.t}, log_c6, log_s[i], log_s[i] - log_c6, cal ? "calibration" : "validation",
            s.reliable);
  }
  rep.constants = {{"C6", std::exp(log_c6)}, {"C7", C7}, {"C8", C8}, {"K", o.K},
                   {"theorem_radius", plan.theorem_radius}};
  rep.notes["calibration"] = o.constant ? "held-out: constant supplied" : "checkerboard split";
  rep.finalize();
  return rep;
}

BoundReport verify_phi_form_bound(const SpectralKernel& spec, int q, double beta1,
                                  const SamplePlan& plan, double safety) {
  BoundReport rep;
  rep.name = "phi_form";
  rep.coord_names = {"r", "t"};
  const int m = spec.model.n() + q;
  const double log_phi2 = -log_ball(spec.model, 0.0, 1.0);
  struct Row {
    SamplePoint p;
    double g;
    bool reliable;
  };
  std::vector<Row> rows;
  for (const auto& p : plan.points) {
    const auto kv = kernel_eval(spec, p.r, p.t);
    const double poly = p.t < 1.0 ? -0.5 * m * std::log(p.t) : 0.0;
    const bool ok = kv.reliable && kv.value > 0.0;
    const double g = ok ? std::log(kv.value) - log_phi2 - poly + beta1 * p.r : 0.0;
    rows.push_back({p, g, ok});
  }
  // Envelope over r at each calibration time.
  std::vector<std::pair<double, double>> env;
  for (const auto& row : rows) {
    if (!row.p.calibration || !row.reliable) continue;
    auto it = std::find_if(env.begin(), env.end(), [&](auto& e) { return e.first == row.p.t; });
    if (it == env.end()) env.emplace_back(row.p.t, row.g);
    else it->second = std::max(it->second, row.g);
  }
  std::sort(env.begin(), env.end());
  if (env.size() < 2) throw ConvergenceError("phi-form calibration needs two reliable times");
  const auto& [ta, ga] = env[env.size() - 2];
  const auto& [tb, gb] = env.back();
  const double rate = -(gb - ga) / (tb - ta);  // alpha + 1
  const double alpha = rate - 1.0;
  double log_c = -std::numeric_limits<double>::infinity();
  for (const auto& [t, g] : env) log_c = std::max(log_c, g + rate * t);
  log_c += std::log(safety);
  for (const auto& row : rows) {
    const double rhs = log_c - rate * row.p.t;
    rep.add({row.p.r, row.p.t}, row.g, rhs, rhs - row.g,
            row.p.calibration ? "calibration" : "validation", row.reliable);
  }
  rep.constants = {{"C", std::exp(log_c)}, {"alpha", alpha}, {"beta1", beta1},
                   {"phi_pole_squared", std::exp(log_phi2)}};
  if (!(alpha < 0.0)) rep.warnings.push_back("fitted alpha is not negative");
  rep.finalize();
  return rep;
}

double li_yau_gaussian_lhs(int n, double alpha, double r, double t) {
  return alpha * n / (2.0 * t) + (1.0 - alpha) * r * r / (4.0 * t * t);
}

double li_yau_gaussian_slack(int n, int q, double alpha, double r, double t) {
  return (n + q) * alpha * alpha / (2.0 * t) - li_yau_gaussian_lhs(n, alpha, r, t);
}

BoundReport verify_li_yau(const SpectralKernel& spec, int q, double K, double alpha,
                          const LiYauWindow& win) {
  if (!(alpha > 1.0)) throw ModelError("Li-Yau needs alpha > 1");
  BoundReport rep;
  rep.name = "li_yau";
  rep.coord_names = {"r", "t"};
  const int m = spec.model.n() + q;
  const double Rbar = spec.model.radius();
  const double r_max = win.r_max > 0.0 ? win.r_max : Rbar / 2.0;
  const double t_max = win.t_max > 0.0 ? win.t_max : std::pow(Rbar / 5.0, 2) / 4.0;
  const double t_min = std::max(win.t_min, spec.t_reliable);
  const double h = spec.h;
  const auto& dec = spec.dec;
  const std::size_t N = dec.nodes.size();
  const std::size_t last = std::min<std::size_t>(N - 5, std::size_t(r_max / h));
  double worst_noise = 0.0;
  for (double t : geometric(t_min, t_max, win.nt)) {
    // E, Et: eigenvector error carried into u and u_t (as in kernel_eval).
    std::vector<double> u(N, 0.0), ut(N, 0.0), S(N, 0.0), St(N, 0.0), E(N, 0.0), Et(N, 0.0);
    const double inv0 = 1.0 / std::sqrt(dec.mass[0]);
    for (std::size_t k = 0; k < dec.eigenvalues.size(); ++k) {
      const double e = std::exp(-dec.eigenvalues[k] * t);
      const double c = e * dec.eigenvectors[k][0];
      const double ek = e * spec.vector_error[k];
      const auto& v = dec.eigenvectors[k];
      for (std::size_t i = 0; i < N; ++i) {
        u[i] += c * v[i];
        ut[i] -= dec.eigenvalues[k] * c * v[i];
        S[i] += std::abs(c * v[i]);
        St[i] += std::abs(dec.eigenvalues[k] * c * v[i]);
        const double err = ek * (std::abs(v[0]) / std::sqrt(dec.mass[i]) + std::abs(v[i]) * inv0);
        E[i] += err;
        Et[i] += dec.eigenvalues[k] * err;
      }
    }
    auto at = [&](long i) { return u[static_cast<std::size_t>(std::abs(i))]; };
    auto err_near = [&](long i) {
      double w = 0.0;
      for (long j = i - 4; j <= i + 4; ++j) w = std::max(w, E[static_cast<std::size_t>(std::abs(j))]);
      return w;
    };
    for (std::size_t a = 0; a < win.nr; ++a) {
      const auto i = static_cast<long>(last * a / (win.nr - 1));
      const double r = dec.nodes[static_cast<std::size_t>(i)];
      const double d1 = (-at(i + 2) + 8 * at(i + 1) - 8 * at(i - 1) + at(i - 2)) / (12 * h);
      const double d2 = (-at(i + 4) + 8 * at(i + 2) - 8 * at(i - 2) + at(i - 4)) / (24 * h);
      const double uu = u[std::size_t(i)];
      const std::size_t ii = std::size_t(i);
      const double du = 1e-15 * S[ii] + E[ii];
      const double dut = 1e-15 * St[ii] + Et[ii];
      // The stencil weights sum to 18/12 in absolute value.
      const double dgrad = std::abs(d1 - d2) / 15.0 + 1.5 * (2e-15 * S[ii] + err_near(i)) / h;
      const double lhs = d1 * d1 / (uu * uu) - alpha * ut[ii] / uu;
      const double rhs = m * alpha * alpha / (2.0 * t) + m * K * alpha * alpha / (2.0 * (alpha - 1.0));
      const double rel = uu > 0.0 ? du / uu : 1.0;
      const double noise = (2.0 * std::abs(d1) * dgrad + dgrad * dgrad) / (uu * uu) +
                           2.0 * rel * d1 * d1 / (uu * uu) + alpha * (dut + std::abs(ut[ii]) * rel) / uu;
      const bool resolved = uu > 0.0 && rel <= 1e-2;
      if (resolved) worst_noise = std::max(worst_noise, noise);
      const double margin = rhs - lhs;
      rep.add({r, t}, lhs, rhs, margin, "validation", resolved && std::abs(margin) > noise);
    }
  }
  rep.constants = {{"alpha", alpha}, {"K", K}, {"dimension", double(m)},
                   {"noise_floor_max", worst_noise}};
  rep.finalize();
  return rep;
}

BoundReport verify_harnack(const SpectralKernel& spec, int q, double K, double alpha,
                           std::span<const HarnackPair> pairs) {
  BoundReport rep;
  rep.name = "harnack";
  rep.coord_names = {"r1", "t1", "r2", "t2"};
  const int m = spec.model.n() + q;
  const double A = m * K * alpha / (2.0 * (alpha - 1.0));
  for (const auto& p : pairs) {
    if (!(p.t1 < p.t2)) throw ModelError("Harnack pairs need t1 < t2");
    const auto u1 = kernel_eval(spec, p.r1, p.t1);
    const auto u2 = kernel_eval(spec, p.r2, p.t2);
    const bool ok = u1.reliable && u2.reliable && u1.value > 0.0 && u2.value > 0.0;
    const double lhs = ok ? std::log(u1.value) : 0.0;
    const double dt = p.t2 - p.t1;
    const double rhs = ok ? std::log(u2.value) + 0.5 * m * alpha * std::log(p.t2 / p.t1) +
                                alpha * (p.r1 - p.r2) * (p.r1 - p.r2) / (4.0 * dt) + A * dt
                          : 0.0;
    rep.add({p.r1, p.t1, p.r2, p.t2}, lhs, rhs, rhs - lhs, "validation", ok);
  }
  rep.constants = {{"alpha", alpha}, {"K", K}, {"A", A}};
  rep.finalize();
  return rep;
}

std::vector<HarnackPair> harnack_pair_grid(const SpectralKernel& spec) {
  const double R = spec.model.radius() / 5.0;
  const double t0 = std::max(spec.t_reliable, R * R / 100.0);
  const double rs[] = {0.0, R / 8.0, R / 4.0};
  const double ts[] = {t0, 2 * t0, 4 * t0, 8 * t0};
  std::vector<HarnackPair> out;
  for (double r1 : rs)
    for (double r2 : rs)
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) out.push_back({r1, ts[a], r2, ts[b]});
  return out;
}

BoundReport verify_subexp_tail(const WeightedModel& model, double beta, geometry::GrowthClass growth) {
  const double R = model.radius();
  std::optional<WeightedModel> wide;
  try {
    wide = model.with_radius(4.0 * R);
  } catch (const ModelError&) {
  }
  if (wide) {
    const double Rs[] = {R / 8, R / 4, R / 2, R, 2 * R, 4 * R};
    auto rep = verify_subexp_integral(*wide, beta, Rs, growth);
    rep.notes["domain"] = "model continued to 4R";
    return rep;
  }
  const double Rs[] = {R / 8, R / 4, R / 2, R - 1};
  auto rep = verify_subexp_integral(model, beta, Rs, growth);
  rep.notes["domain"] = "tabulated model, radii up to R - 1";
  return rep;
}

BoundReport verify_subexp_integral(const WeightedModel& model, double beta,
                                   std::span<const double> R_list, geometry::GrowthClass growth) {
  BoundReport rep;
  rep.name = "subexp_integral";
  rep.coord_names = {"R"};
  std::vector<double> Rs(R_list.begin(), R_list.end());
  std::sort(Rs.begin(), Rs.end());
  const VolumeNormalizer norm(model, Rs.back());
  const double log_phi0 = -0.5 * norm.log_volume(0.0);
  auto integrand = [&](double s) {
    return std::exp(log_phi0 - 0.5 * norm.log_volume(s) - beta * s + model.log_density(s));
  };
  std::vector<double> values;
  double acc = 0.0, prev_R = 0.0;
  for (double R : Rs) {
    std::vector<double> breaks;
    for (double b = std::ceil(prev_R) + 1.0; b < R; b += 1.0) breaks.push_back(b);
    // The normalizer table carries ~1e-12 relative noise when log V spans
    // thousands (Gaussian weights far out), so ask for 1e-10 only.
    acc += integrate_piecewise(integrand, prev_R, R, breaks, {1e-15, 1e-10}).value;
    values.push_back(acc);
    prev_R = R;
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double inc = std::abs(values[i] - values[i - 1]);
    rep.add({Rs[i]}, inc, 1e-8, 1e-8 - inc, "validation", i + 1 == values.size());
  }
  rep.constants = {{"beta", beta}, {"I_last", values.back()}};
  rep.notes["centers"] = "pole-centered only; uniformity over all centers is not checked";
  rep.notes["growth"] = geometry::to_string(growth);
  rep.hard = growth == geometry::GrowthClass::subexponential;
  rep.finalize();
  if (rep.verdict == Verdict::fail) {
    rep.warnings.push_back(rep.hard ? "integral diverges on a model classified subexponential"
                                    : "integral diverges (model not subexponential)");
  }
  return rep;
}

}  // namespace wmlab::heat
