#include "wmlab/discrete/operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "wmlab/core/error.hpp"

namespace wmlab::discrete {

namespace {

constexpr std::size_t kMinIntervals = 64;

double cell_integral(const geometry::WeightedModel& model, double a, double b) {
  if (b <= a) return 0.0;
  using G = boost::math::quadrature::gauss<double, 10>;
  return G::integrate([&](double s) { return model.density(s); }, a, b);
}

}  // namespace

Grid1D Grid1D::uniform(double radius, std::size_t intervals) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ModelError("grid radius must be finite and > 0");
  Grid1D g;
  g.nodes.resize(intervals + 1);
  const double h = radius / static_cast<double>(intervals);
  for (std::size_t i = 0; i <= intervals; ++i) g.nodes[i] = static_cast<double>(i) * h;
  g.nodes.back() = radius;
  return g;
}

std::vector<double> SturmLiouvilleOp::apply(std::span<const double> u) const {
  const std::size_t n = size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    if (i > 0) s += face[i - 1] * (u[i] - u[i - 1]);
    if (i < face.size()) s += face[i] * (u[i] - (i + 1 < n ? u[i + 1] : 0.0));
    out[i] = s / mass[i] + potential[i] * u[i];
  }
  return out;
}

double SturmLiouvilleOp::inner(std::span<const double> u, std::span<const double> v) const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += mass[i] * u[i] * v[i];
  return s;
}

double SturmLiouvilleOp::norm_bound() const {
  double out = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(offdiag[i - 1]);
    if (i + 1 < size()) row += std::abs(offdiag[i]);
    out = std::max(out, row);
  }
  return out;
}

SturmLiouvilleOp assemble(const geometry::WeightedModel& model, const Grid1D& grid,
                          std::span<const double> W) {
  const auto& r = grid.nodes;
  if (r.size() < kMinIntervals + 1) throw ModelError("grid needs at least 64 intervals");
  if (r.front() != 0.0) throw ModelError("grid must start at the pole");
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1])) throw ModelError("grid nodes must be strictly increasing");
  }
  if (std::abs(grid.radius() - model.radius()) > 1e-12 * model.radius()) {
    throw ModelError("grid does not span the model domain");
  }
  if (W.size() != r.size()) throw ModelError("potential must be sampled on every grid node");

  SturmLiouvilleOp op;
  op.grid = grid;
  op.bc = model.bc();
  const std::size_t cells = grid.intervals();
  const std::size_t n = op.bc == BoundaryCondition::dirichlet ? cells : cells + 1;

  op.face.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double mid = 0.5 * (r[i] + r[i + 1]);
    op.face[i] = model.density(mid) / (r[i + 1] - r[i]);
  }
  op.mass.resize(n);
  op.potential.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i == 0 ? 0.0 : 0.5 * (r[i - 1] + r[i]);
    const double b = i == cells ? r[i] : 0.5 * (r[i] + r[i + 1]);
    op.mass[i] = cell_integral(model, a, b);
    op.potential[i] = W[i];
    if (!(W[i] >= 0.0) || !std::isfinite(W[i])) throw ModelError("potential must be finite and >= 0");
  }
  for (std::size_t i = 0; i < cells; ++i) {
    if (!(op.face[i] > 0.0) || !std::isfinite(op.face[i])) {
      std::ostringstream msg;
      msg << "degenerate cell at r = " << r[i] << " (weight " << op.face[i] << ")";
      throw ModelError(msg.str());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(op.mass[i] > 0.0) || !std::isfinite(op.mass[i])) {
      std::ostringstream msg;
      msg << "degenerate cell mass at r = " << r[i];
      throw ModelError(msg.str());
    }
  }

  op.diag.resize(n);
  op.offdiag.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    if (i > 0) s += op.face[i - 1];
    if (i < cells) s += op.face[i];
    op.diag[i] = s / op.mass[i] + op.potential[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    op.offdiag[i] = -op.face[i] / std::sqrt(op.mass[i] * op.mass[i + 1]);
  }
  return op;
}

SturmLiouvilleOp assemble(const geometry::WeightedModel& model, const Grid1D& grid) {
  const std::vector<double> zero(grid.nodes.size(), 0.0);
  return assemble(model, grid, zero);
}

SturmLiouvilleOp assemble(const geometry::WeightedModel& model, std::size_t intervals,
                          const std::function<double(double)>& W) {
  const Grid1D grid = Grid1D::uniform(model.radius(), intervals);
  std::vector<double> w(grid.nodes.size(), 0.0);
  if (W) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = W(grid.nodes[i]);
  }
  return assemble(model, grid, w);
}

}  // namespace wmlab::discrete
