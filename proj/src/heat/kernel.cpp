#include "wmlab/heat/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "wmlab/core/error.hpp"
#include "wmlab/core/tridiagonal.hpp"

namespace wmlab::heat {

namespace {

double tail_at(const SpectralKernel& s, double t, double m0, double mr) {
  const double omitted = static_cast<double>(s.unknowns - s.dec.eigenvalues.size());
  return omitted * std::exp(-s.next_eigenvalue * t) / std::sqrt(m0 * mr);
}

// Lagrange weights on the 4 nodes bracketing r, using even reflection at the
// pole and u(R) = 0 under Dirichlet.
struct Stencil {
  std::array<long, 4> index{};  // -1 means the Dirichlet boundary value (zero)
  std::array<double, 4> weight{};
  std::size_t nearest = 0;
};

Stencil stencil(const SpectralKernel& s, double r) {
  const auto& nodes = s.dec.nodes;
  const auto& grid = s.model;
  const long n_unknowns = static_cast<long>(nodes.size());
  const bool dirichlet = grid.bc() == geometry::BoundaryCondition::dirichlet;
  const long last = dirichlet ? n_unknowns : n_unknowns - 1;  // index of node R
  auto position = [&](long i) {
    if (i < 0) return -nodes[static_cast<std::size_t>(-i)];
    if (i >= n_unknowns) return grid.radius();
    return nodes[static_cast<std::size_t>(i)];
  };
  // Interval containing r.
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
  long j = static_cast<long>(it - nodes.begin()) - 1;
  j = std::clamp(j, 0L, last - 1);
  long first = std::clamp(j - 1, -2L, last - 3);
  Stencil st;
  std::array<double, 4> x{};
  for (int a = 0; a < 4; ++a) x[a] = position(first + a);
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) w *= (r - x[b]) / (x[a] - x[b]);
    }
    const long i = first + a;
    st.weight[a] = w;
    st.index[a] = i >= n_unknowns ? -1 : std::abs(i);
  }
  const long near = std::clamp(static_cast<long>(std::lround(static_cast<double>(j) +
                                   (r - position(j)) / (position(j + 1) - position(j)))),
                               0L, n_unknowns - 1);
  st.nearest = static_cast<std::size_t>(near);
  return st;
}

double apply_stencil(const Stencil& st, const std::vector<double>& u) {
  double v = 0.0;
  for (int a = 0; a < 4; ++a) {
    if (st.index[a] >= 0) v += st.weight[a] * u[static_cast<std::size_t>(st.index[a])];
  }
  return v;
}

}  // namespace

SpectralKernel build_kernel(const WeightedModel& model, const KernelOptions& opts) {
  const auto op = discrete::assemble(model, opts.intervals);
  const std::size_t N = op.size();
  const std::size_t cap = N / 4;
  const auto first = discrete::eigen_solve(op, 1, true);
  const double lambda1 = first.eigenvalues[0];
  const double psi0 = first.eigenvectors[0][0];
  const double m0 = op.mass[0];

  auto tail_ok = [&](std::size_t terms, double next) {
    const double tail = static_cast<double>(N - terms) * std::exp(-next * opts.t_min) / m0;
    return tail <= opts.rel_tail * std::exp(-lambda1 * opts.t_min) * psi0 * psi0;
  };

  std::size_t pairs = std::min<std::size_t>(33, cap);
  for (;;) {
    const auto values = discrete::eigen_solve(op, pairs, false);
    if (tail_ok(pairs - 1, values.eigenvalues.back()) || pairs == cap) break;
    pairs = std::min(cap, pairs * 2);
  }
  // Trim to the smallest count that meets the criterion.
  const auto values = discrete::eigen_solve(op, pairs, false);
  std::size_t terms = pairs - 1;
  while (terms > 1 && tail_ok(terms - 1, values.eigenvalues[terms - 1])) --terms;

  SpectralKernel s{model, discrete::eigen_solve(op, terms, true), values.eigenvalues[terms], N, 0.0,
                   model.radius() / static_cast<double>(opts.intervals), {}};
  const auto& lam = values.eigenvalues;
  for (std::size_t k = 0; k < terms; ++k) {
    double gap = lam[k + 1] - lam[k];
    if (k > 0) gap = std::min(gap, lam[k] - lam[k - 1]);
    gap = std::max(gap, 1e-300);
    s.vector_error.push_back(std::max(s.dec.residuals[k], 1e-16 * s.dec.norm) / gap);
  }
  // Smallest t with tail <= rel_tail * leading term at the pole.
  const double gap = s.next_eigenvalue - lambda1;
  s.t_reliable = std::max(0.0, std::log(static_cast<double>(N - terms) /
                                        (m0 * opts.rel_tail * psi0 * psi0)) / gap);
  return s;
}

KernelValue kernel_eval(const SpectralKernel& s, double r, double t) {
  if (!(t >= s.t_reliable * (1.0 - 1e-12)) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << "t = " << t << " is below the smallest reliable time " << s.t_reliable
        << " for this truncation";
    throw ConvergenceError(msg.str());
  }
  if (!(r >= 0.0) || r > s.model.radius()) throw ModelError("kernel radius outside the domain");
  const Stencil st = stencil(s, r);
  const auto& vecs = s.dec.eigenvectors;
  const auto& lam = s.dec.eigenvalues;
  KernelValue out;
  const auto& mass = s.dec.mass;
  const double inv0 = 1.0 / std::sqrt(mass[0]), invr = 1.0 / std::sqrt(mass[st.nearest]);
  for (std::size_t k = 0; k < lam.size(); ++k) {
    const double e = std::exp(-lam[k] * t);
    const double psi_r = apply_stencil(st, vecs[k]);
    const double term = e * vecs[k][0] * psi_r;
    out.noise += e * s.vector_error[k] * (std::abs(vecs[k][0]) * invr + std::abs(psi_r) * inv0);
    out.value += term;
    out.time_derivative -= lam[k] * term;
    out.abs_sum += std::abs(term);
    if (k == 0) out.leading = std::abs(term);
  }
  out.noise += 1e-15 * out.abs_sum;
  out.tail_bound = tail_at(s, t, mass[0], mass[st.nearest]);
  out.reliable = out.tail_bound <= 1e-12 * out.leading &&
                 out.tail_bound + out.noise <= 1e-2 * std::abs(out.value);
  return out;
}

std::vector<double> kernel_on_nodes(const SpectralKernel& s, double t) {
  if (!(t >= s.t_reliable * (1.0 - 1e-12))) {
    std::ostringstream msg;
    msg << "t = " << t << " is below the smallest reliable time " << s.t_reliable;
    throw ConvergenceError(msg.str());
  }
  std::vector<double> out(s.dec.nodes.size(), 0.0);
  for (std::size_t k = 0; k < s.dec.eigenvalues.size(); ++k) {
    const auto& v = s.dec.eigenvectors[k];
    const double c = std::exp(-s.dec.eigenvalues[k] * t) * v[0];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * v[i];
  }
  return out;
}

double kernel_mass(const SpectralKernel& s, double t) {
  const auto u = kernel_on_nodes(s, t);
  double m = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) m += s.dec.mass[i] * u[i];
  return m;
}

std::vector<double> crank_nicolson(const discrete::SturmLiouvilleOp& op, std::vector<double> u,
                                   double dt, std::size_t steps) {
  const std::size_t n = op.size();
  std::vector<double> v(n), lhs_d(n), lhs_o(n - 1), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = std::sqrt(op.mass[i]) * u[i];
    lhs_d[i] = 1.0 + 0.5 * dt * op.diag[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) lhs_o[i] = 0.5 * dt * op.offdiag[i];
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      double bv = op.diag[i] * v[i];
      if (i > 0) bv += op.offdiag[i - 1] * v[i - 1];
      if (i + 1 < n) bv += op.offdiag[i] * v[i + 1];
      rhs[i] = v[i] - 0.5 * dt * bv;
    }
    v = solve_tridiagonal(lhs_d, lhs_o, rhs);
  }
  for (std::size_t i = 0; i < n; ++i) u[i] = v[i] / std::sqrt(op.mass[i]);
  return u;
}

CrosscheckResult verify_semigroup_crosscheck(const WeightedModel& model, const KernelOptions& opts,
                                             double t0, double t1, std::size_t steps, double tol) {
  CrosscheckResult res;
  res.report.name = "semigroup_crosscheck";
  res.report.coord_names = {"kind", "value"};

  KernelOptions o = opts;
  o.t_min = std::min(o.t_min, t0);
  const auto spec = build_kernel(model, o);
  const auto op = discrete::assemble(model, opts.intervals);
  // Weighted l2 (the norm the operator is symmetric in): nodal values where
  // the weight underflows are eigenvector noise and carry no mass.
  const auto& mass = spec.dec.mass;
  const auto evolved = crank_nicolson(op, kernel_on_nodes(spec, t0), (t1 - t0) / double(steps), steps);
  const auto exact = kernel_on_nodes(spec, t1);
  double scale = 0.0, err = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    scale += mass[i] * exact[i] * exact[i];
    err += mass[i] * (exact[i] - evolved[i]) * (exact[i] - evolved[i]);
  }
  res.cn_error = std::sqrt(err / scale);
  res.report.add({0.0, res.cn_error}, res.cn_error, tol, tol - res.cn_error);

  // Nested domains with the same spacing; compare on r <= R/2.
  std::vector<std::vector<double>> values;
  try {
    for (int m : {1, 2, 4}) {
      KernelOptions om = o;
      om.intervals = opts.intervals * static_cast<std::size_t>(m);
      om.t_min = t1;
      const auto s = build_kernel(model.with_radius(model.radius() * m), om);
      values.push_back(kernel_on_nodes(s, t1));
    }
  } catch (const ModelError& e) {
    // Weights that underflow on the larger domains (Gaussian), or tabulated data.
    res.report.notes["nested"] = std::string("skipped: ") + e.what();
    res.report.constants["cn_error"] = res.cn_error;
    res.report.finalize();
    return res;
  }
  const std::size_t interior = opts.intervals / 2 + 1;
  double top = 0.0;
  for (std::size_t i = 0; i < interior; ++i) top = std::max(top, std::abs(values[2][i]));
  for (std::size_t a = 0; a + 1 < values.size(); ++a) {
    double d = 0.0;
    for (std::size_t i = 0; i < interior; ++i) d = std::max(d, std::abs(values[a][i] - values[a + 1][i]));
    res.nested_differences.push_back(d / top);
  }
  const double d1 = res.nested_differences[0], d2 = res.nested_differences[1];
  const bool resolved = d1 > 1e-13;
  res.report.add({1.0, d2}, d2, d1, d1 - d2, "validation", resolved);
  res.report.constants["cn_error"] = res.cn_error;
  res.report.constants["nested_R_vs_2R"] = d1;
  res.report.constants["nested_2R_vs_4R"] = d2;
  res.report.finalize();
  return res;
}

BoundReport verify_weak_limit(const SpectralKernel& s,
                              std::span<const std::function<double(double)>> tests,
                              std::span<const double> times, double tol) {
  BoundReport rep;
  rep.name = "weak_limit";
  rep.coord_names = {"g", "t"};
  std::vector<double> ts(times.begin(), times.end());
  std::sort(ts.begin(), ts.end(), std::greater<>());
  for (std::size_t g = 0; g < tests.size(); ++g) {
    std::vector<double> gv(s.dec.nodes.size());
    for (std::size_t i = 0; i < gv.size(); ++i) gv[i] = tests[g](s.dec.nodes[i]);
    const double target = tests[g](0.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double t : ts) {
      const auto u = kernel_on_nodes(s, t);
      double integral = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) integral += s.dec.mass[i] * u[i] * gv[i];
      const double err = std::abs(integral - target);
      if (std::isfinite(prev)) rep.add({double(g), t}, err, prev, prev - err + 1e-14);
      prev = err;
    }
    rep.add({double(g), ts.back()}, prev, tol, tol - prev);
  }
  rep.finalize();
  return rep;
}

BoundReport verify_mass_positivity(const SpectralKernel& s, std::span<const double> times,
                                   double mass_tol) {
  BoundReport rep;
  rep.name = "mass_positivity";
  rep.coord_names = {"kind", "t"};  // kind 0 mass, 1 monotone, 2 positivity
  const bool neumann = s.model.bc() == geometry::BoundaryCondition::neumann;
  std::vector<double> ts(times.begin(), times.end());
  std::sort(ts.begin(), ts.end());
  double prev = std::numeric_limits<double>::infinity(), prev_t = 0.0;
  for (double t : ts) {
    const auto u = kernel_on_nodes(s, t);
    double mass = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      mass += s.dec.mass[i] * u[i];
    }
    // Rounding and truncation allowances per node: the sum of |terms| and the
    // omitted tail (N-k) e^{-lambda_{k+1} t} / sqrt(m_0 m_i).
    std::vector<double> abs_sum(u.size(), 0.0), lead(u.size(), 0.0), noise(u.size(), 0.0);
    const double inv0 = 1.0 / std::sqrt(s.dec.mass[0]);
    for (std::size_t k = 0; k < s.dec.eigenvalues.size(); ++k) {
      const auto& v = s.dec.eigenvectors[k];
      const double e = std::exp(-s.dec.eigenvalues[k] * t);
      const double c = e * v[0];
      for (std::size_t i = 0; i < u.size(); ++i) {
        abs_sum[i] += std::abs(c * v[i]);
        noise[i] += e * s.vector_error[k] *
                    (std::abs(v[0]) / std::sqrt(s.dec.mass[i]) + std::abs(v[i]) * inv0);
        if (k == 0) lead[i] = std::abs(c * v[i]);
      }
    }
    // Rounding of the weighted sum plus the drift of e^{-lambda t} from
    // eigenvalues known to ~1e-15 ||B||.
    double rounding = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) rounding += 1e-14 * s.dec.mass[i] * abs_sum[i];
    // The eigenvector errors carried through the weighted sum bound how well
    // the mass itself is known; beyond mass_tol the sample says nothing.
    double mass_noise = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) mass_noise += s.dec.mass[i] * noise[i];
    const double allowance = mass_tol + rounding;
    const bool resolved = mass_noise <= mass_tol;
    if (neumann) {
      rep.add({0.0, t}, mass, 1.0, allowance - std::abs(mass - 1.0), "validation", resolved);
    } else {
      rep.add({0.0, t}, mass, 1.0, 1.0 + allowance - mass, "validation", resolved);
    }
    rep.constants["max_mass_noise"] = std::max(rep.constants["max_mass_noise"], mass_noise);
    if (std::isfinite(prev)) {
      const double drift = std::abs(mass) * (t - prev_t) * 1e-15 * s.dec.norm;
      rep.add({1.0, t}, mass, prev, prev - mass + rounding + drift);
    }
    prev_t = t;
    prev = mass;
    double worst = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      const double tail = tail_at(s, t, s.dec.mass[0], s.dec.mass[i]);
      if (tail > 1e-12 * lead[i] || tail + noise[i] + 1e-15 * abs_sum[i] > 1e-2 * std::abs(u[i])) continue;
      any = true;
      worst = std::min(worst, u[i]);
    }
    rep.add({2.0, t}, any ? worst : 0.0, 0.0, any ? worst : 0.0, "validation", any);
  }
  rep.finalize();
  return rep;
}

BoundReport verify_varadhan(const SpectralKernel& s, std::span<const double> radii,
                            std::span<const double> times, double rel_tol) {
  BoundReport rep;
  rep.name = "varadhan";
  rep.coord_names = {"r"};
  for (double r : radii) {
    // Least squares for log H = a + c log t + b / t via 3x3 normal equations.
    double A[3][3] = {}, y[3] = {};
    std::size_t used = 0;
    for (double t : times) {
      const auto kv = kernel_eval(s, r, t);
      if (!kv.reliable || !(kv.value > 0.0)) continue;
      const double x[3] = {1.0, std::log(t), 1.0 / t};
      const double l = std::log(kv.value);
      for (int a = 0; a < 3; ++a) {
        y[a] += x[a] * l;
        for (int b = 0; b < 3; ++b) A[a][b] += x[a] * x[b];
      }
      ++used;
    }
    if (used < 4) {
      rep.add({r}, 0.0, r * r, 0.0, "validation", false);
      continue;
    }
    auto det3 = [](double M[3][3]) {
      return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
             M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
             M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    };
    double Mb[3][3];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) Mb[a][b] = A[a][b];
      Mb[a][2] = y[a];
    }
    const double b = det3(Mb) / det3(A);
    const double d2 = -4.0 * b;
    const double rel = std::abs(d2 / (r * r) - 1.0);
    rep.add({r}, d2, r * r, rel_tol - rel);
  }
  rep.finalize();
  return rep;
}

}  // namespace wmlab::heat
