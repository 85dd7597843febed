#include "wmlab/heat/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wmlab/core/error.hpp"
#include "wmlab/core/tridiagonal.hpp"
#include "wmlab/heat/kernel.hpp"

namespace wmlab::heat {

ProductGrid2D::ProductGrid2D(const WarpedProductModel& wp, std::size_t radial_cells,
                             std::size_t fiber_points)
    : fiber_(fiber_points) {
  if (wp.q() != 1) throw ModelError("the 2D product grid needs a circle fiber (q = 1)");
  if (radial_cells < 8 || fiber_points < 4) throw ModelError("2D grid too coarse");
  const auto& m = wp.base();
  dirichlet_ = m.bc() == geometry::BoundaryCondition::dirichlet;
  h_ = m.radius() / double(radial_cells);
  dtheta_ = 2.0 * std::numbers::pi / double(fiber_points);
  const double eps = wp.epsilon();
  centers_.resize(radial_cells);
  w_center_.resize(radial_cells);
  fiber_coef_.resize(radial_cells);
  w_face_.resize(radial_cells + 1);
  for (std::size_t i = 0; i < radial_cells; ++i) {
    const double r = (double(i) + 0.5) * h_;
    centers_[i] = r;
    w_center_[i] = m.density(r);
    fiber_coef_[i] = std::exp(2.0 * m.weight().jet(r).value) / (eps * eps);
  }
  for (std::size_t i = 0; i <= radial_cells; ++i) w_face_[i] = i == 0 ? 0.0 : m.density(double(i) * h_);
}

void ProductGrid2D::apply_r(const std::vector<double>& u, std::vector<double>& out) const {
  const std::size_t N = centers_.size(), L = fiber_;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < L; ++j) {
      const double c = u[i * L + j];
      const double up = i + 1 < N ? u[(i + 1) * L + j] : (dirichlet_ ? -c : c);
      const double down = i > 0 ? u[(i - 1) * L + j] : c;
      out[i * L + j] = (w_face_[i + 1] * (up - c) - w_face_[i] * (c - down)) / (h_ * h_ * w_center_[i]);
    }
  }
}

void ProductGrid2D::apply_theta(const std::vector<double>& u, std::vector<double>& out) const {
  const std::size_t N = centers_.size(), L = fiber_;
  for (std::size_t i = 0; i < N; ++i) {
    const double k = fiber_coef_[i] / (dtheta_ * dtheta_);
    for (std::size_t j = 0; j < L; ++j) {
      const double c = u[i * L + j];
      out[i * L + j] = k * (u[i * L + (j + 1) % L] - 2.0 * c + u[i * L + (j + L - 1) % L]);
    }
  }
}

void ProductGrid2D::step(std::vector<double>& u, double dt) const {
  const std::size_t N = centers_.size(), L = fiber_;
  std::vector<double> tmp(u.size()), half(u.size());
  // (I - dt/2 Lr) u* = (I + dt/2 Ltheta) u
  apply_theta(u, tmp);
  for (std::size_t a = 0; a < u.size(); ++a) tmp[a] = u[a] + 0.5 * dt * tmp[a];
  {
    std::vector<double> lower(N - 1), diag(N), upper(N - 1), rhs(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double s = 0.5 * dt / (h_ * h_ * w_center_[i]);
      double d = w_face_[i] + w_face_[i + 1];
      if (i + 1 == N) d = dirichlet_ ? w_face_[i] + 2.0 * w_face_[i + 1] : w_face_[i];
      diag[i] = 1.0 + s * d;
      if (i + 1 < N) upper[i] = -s * w_face_[i + 1];
      if (i > 0) lower[i - 1] = -s * w_face_[i];
    }
    for (std::size_t j = 0; j < L; ++j) {
      for (std::size_t i = 0; i < N; ++i) rhs[i] = tmp[i * L + j];
      const auto x = solve_tridiagonal(lower, diag, upper, rhs);
      for (std::size_t i = 0; i < N; ++i) half[i * L + j] = x[i];
    }
  }
  // (I - dt/2 Ltheta) u' = (I + dt/2 Lr) u*
  apply_r(half, tmp);
  for (std::size_t a = 0; a < u.size(); ++a) tmp[a] = half[a] + 0.5 * dt * tmp[a];
  std::vector<double> lower(L), diag(L), upper(L), rhs(L);
  for (std::size_t i = 0; i < N; ++i) {
    const double k = 0.5 * dt * fiber_coef_[i] / (dtheta_ * dtheta_);
    std::fill(lower.begin(), lower.end(), -k);
    std::fill(upper.begin(), upper.end(), -k);
    std::fill(diag.begin(), diag.end(), 1.0 + 2.0 * k);
    for (std::size_t j = 0; j < L; ++j) rhs[j] = tmp[i * L + j];
    const auto x = solve_cyclic_tridiagonal(lower, diag, upper, rhs);
    for (std::size_t j = 0; j < L; ++j) u[i * L + j] = x[j];
  }
}

void ProductGrid2D::advance(std::vector<double>& u, double duration, double dt_max) const {
  if (duration <= 0.0) return;
  const auto steps = static_cast<std::size_t>(std::ceil(duration / dt_max - 1e-9));
  const double dt = duration / double(steps);
  for (std::size_t s = 0; s < steps; ++s) step(u, dt);
}

std::vector<double> ProductGrid2D::fiber_average(const std::vector<double>& u) const {
  std::vector<double> avg(centers_.size(), 0.0);
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    for (std::size_t j = 0; j < fiber_; ++j) avg[i] += u[i * fiber_ + j];
    avg[i] /= double(fiber_);
  }
  return avg;
}

double ProductGrid2D::mass(const std::vector<double>& avg) const {
  double m = 0.0;
  for (std::size_t i = 0; i < avg.size(); ++i) m += w_center_[i] * h_ * avg[i];
  return m;
}

double interpolate_cells(const std::vector<double>& centers, const std::vector<double>& values, double r) {
  const long N = static_cast<long>(centers.size());
  const double h = centers[1] - centers[0];
  long j = static_cast<long>(std::floor(r / h - 0.5));  // centers[j] <= r < centers[j+1]
  long first = std::clamp(j - 1, -2L, N - 4);
  double v = 0.0;
  for (int a = 0; a < 4; ++a) {
    const long i = first + a;
    const double xa = (double(i) + 0.5) * h;
    double w = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b == a) continue;
      const double xb = (double(first + b) + 0.5) * h;
      w *= (r - xb) / (xa - xb);
    }
    const long src = i < 0 ? -i - 1 : i;  // cell -1 mirrors cell 0
    v += w * values[static_cast<std::size_t>(src)];
  }
  return v;
}

AveragingResult verify_averaging_identity(const WarpedProductModel& wp, std::span<const double> t_list,
                                          const AveragingOptions& o) {
  AveragingResult res;
  auto& rep = res.report;
  rep.name = "averaging_identity";
  rep.coord_names = {"kind", "index", "value"};
  const auto& base = wp.base();
  std::vector<double> ts(t_list.begin(), t_list.end());
  std::sort(ts.begin(), ts.end());
  if (!(ts.front() > o.t0)) throw ModelError("averaging times must exceed t0");

  KernelOptions ko;
  ko.intervals = o.reference_intervals;
  ko.t_min = o.t0;
  const auto ref = build_kernel(base, ko);

  // Interior sample radii where the reference is not negligible.
  const double R = base.radius();
  std::vector<std::vector<double>> sample_r(ts.size()), sample_h(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double top = kernel_eval(ref, 0.0, ts[k]).value;
    for (double r = 0.0; r <= 0.5 * R + 1e-12; r += R / 60.0) {
      const double v = kernel_eval(ref, r, ts[k]).value;
      if (v >= 1e-3 * top) {
        sample_r[k].push_back(r);
        sample_h[k].push_back(v);
      }
    }
  }

  auto initial = [&](const ProductGrid2D& g, double amp) {
    std::vector<double> u(g.radial_cells() * g.fiber_points());
    const double dth = 2.0 * std::numbers::pi / double(g.fiber_points());
    for (std::size_t i = 0; i < g.radial_cells(); ++i) {
      const double v = kernel_eval(ref, g.centers()[i], o.t0).value;
      for (std::size_t j = 0; j < g.fiber_points(); ++j)
        u[i * g.fiber_points() + j] = v * (1.0 + amp * std::cos(dth * double(j)));
    }
    return u;
  };

  std::vector<double> finest_errors;
  for (std::size_t gi = 0; gi < o.radial_cells.size(); ++gi) {
    const ProductGrid2D g(wp, o.radial_cells[gi], o.fiber_points);
    auto u = initial(g, 0.0);
    double now = o.t0, worst = 0.0;
    finest_errors.clear();
    double fiber_dev = 0.0, mass_err = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      g.advance(u, ts[k] - now, o.dt_per_h * g.h());
      now = ts[k];
      const auto avg = g.fiber_average(u);
      double e = 0.0;
      for (std::size_t s = 0; s < sample_r[k].size(); ++s) {
        const double v = interpolate_cells(g.centers(), avg, sample_r[k][s]);
        e = std::max(e, std::abs(v - sample_h[k][s]) / sample_h[k][s]);
      }
      finest_errors.push_back(e);
      worst = std::max(worst, e);
      double top = 0.0;
      for (double a : avg) top = std::max(top, std::abs(a));
      for (std::size_t i = 0; i < g.radial_cells(); ++i)
        for (std::size_t j = 0; j < g.fiber_points(); ++j)
          fiber_dev = std::max(fiber_dev, std::abs(u[i * g.fiber_points() + j] - avg[i]) / top);
      mass_err = std::max(mass_err, std::abs(g.mass(avg) - kernel_mass(ref, ts[k])));
    }
    res.grid_errors.push_back(worst);
    res.fiber_dependence = fiber_dev;
    res.mass_error = mass_err;
  }
  for (std::size_t k = 0; k < ts.size(); ++k)
    rep.add({0.0, double(k), finest_errors[k]}, finest_errors[k], o.tol, o.tol - finest_errors[k]);
  const std::size_t G = res.grid_errors.size();
  if (G >= 2) {
    const double fine_ratio = double(o.radial_cells[G - 1]) / double(o.radial_cells[G - 2]);
    res.order = std::log(res.grid_errors[G - 2] / res.grid_errors[G - 1]) / std::log(fine_ratio);
    rep.add({1.0, double(G - 1), res.order}, res.order, o.min_order, res.order - o.min_order);
  }
  rep.add({2.0, 0.0, res.fiber_dependence}, res.fiber_dependence, o.tol, o.tol - res.fiber_dependence);
  rep.add({3.0, 0.0, res.mass_error}, res.mass_error, o.tol, o.tol - res.mass_error);

  // Fiber-nonuniform start on the finest grid.
  {
    const ProductGrid2D g(wp, o.radial_cells.back(), o.fiber_points);
    auto u = initial(g, o.perturbation);
    const std::size_t L = g.fiber_points();
    auto deviation = [&](const std::vector<double>& v) {
      const auto avg = g.fiber_average(v);
      double s = 0.0;
      for (std::size_t i = 0; i < g.radial_cells(); ++i)
        for (std::size_t j = 0; j < L; ++j) {
          const double d = v[i * L + j] - avg[i];
          s += base.density(g.centers()[i]) * g.h() * d * d;
        }
      return std::sqrt(s);
    };
    double now = o.t0, worst = 0.0;
    std::vector<double> devs, times;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      g.advance(u, ts[k] - now, o.dt_per_h * g.h());
      now = ts[k];
      const auto avg = g.fiber_average(u);
      for (std::size_t s = 0; s < sample_r[k].size(); ++s) {
        const double v = interpolate_cells(g.centers(), avg, sample_r[k][s]);
        worst = std::max(worst, std::abs(v - sample_h[k][s]) / sample_h[k][s]);
      }
      devs.push_back(deviation(u));
      times.push_back(ts[k]);
    }
    rep.add({4.0, 0.0, worst}, worst, o.tol, o.tol - worst);
    double min_e2f = std::numeric_limits<double>::infinity();
    for (double r : g.centers()) min_e2f = std::min(min_e2f, std::exp(2.0 * base.weight().jet(r).value));
    const double dth = 2.0 * std::numbers::pi / double(L);
    const double kappa = (2.0 - 2.0 * std::cos(dth)) / (dth * dth);
    res.mode_decay_floor = min_e2f * kappa / (wp.epsilon() * wp.epsilon());
    if (devs.size() >= 2 && devs[0] > 0.0 && devs[1] > 0.0) {
      res.mode_decay_rate = -std::log(devs[1] / devs[0]) / (times[1] - times[0]);
      rep.add({5.0, 0.0, res.mode_decay_rate}, res.mode_decay_rate, res.mode_decay_floor,
              res.mode_decay_rate - res.mode_decay_floor);
    }
  }
  rep.constants = {{"order", res.order},
                   {"fiber_dependence", res.fiber_dependence},
                   {"mass_error", res.mass_error},
                   {"mode_decay_rate", res.mode_decay_rate},
                   {"mode_decay_floor", res.mode_decay_floor},
                   {"epsilon", wp.epsilon()}};
  for (std::size_t g = 0; g < res.grid_errors.size(); ++g)
    rep.constants["error_cells_" + std::to_string(o.radial_cells[g])] = res.grid_errors[g];
  rep.finalize();
  return res;
}

}  // namespace wmlab::heat
