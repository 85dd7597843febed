#include "wmlab/geometry/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wmlab/core/error.hpp"

namespace wmlab::geometry {

const char* to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::dirichlet ? "dirichlet" : "neumann";
}

BoundaryCondition parse_boundary_condition(const std::string& s) {
  if (s == "dirichlet") return BoundaryCondition::dirichlet;
  if (s == "neumann") return BoundaryCondition::neumann;
  throw ModelError("unknown boundary condition '" + s + "'");
}

double unit_sphere_area(int k) {
  if (k < 0) throw ModelError("sphere dimension must be >= 0");
  const double m = k + 1.0;
  return 2.0 * std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0);
}

WeightedModel::WeightedModel(int n, RadialWarpFunction warp, WeightFunction weight, double radius,
                             BoundaryCondition bc)
    : n_(n), warp_(std::move(warp)), weight_(std::move(weight)), radius_(radius), bc_(bc) {
  if (n_ < 1) throw ModelError("dimension n must be >= 1");
  if (!(radius_ > 0.0)) throw ModelError("domain radius must be > 0");
  if (n_ >= 2 && warp_.max_radius() < radius_ * (1.0 - 1e-12)) {
    throw ModelError("tabulated warp does not cover the domain radius");
  }
  if (weight_.max_radius() < radius_ * (1.0 - 1e-12)) {
    throw ModelError("tabulated weight does not cover the domain radius");
  }
}

WeightedModel WeightedModel::with_radius(double radius) const {
  return WeightedModel(n_, warp_, weight_, radius, bc_);
}

WeightedModel WeightedModel::with_bc(BoundaryCondition bc) const {
  return WeightedModel(n_, warp_, weight_, radius_, bc);
}

RadialJet WeightedModel::warp_jet(double r) const {
  if (n_ == 1) return {1.0, 0.0, 0.0};
  return warp_.jet(r);
}

double WeightedModel::log_density(double r) const {
  double out = std::log(unit_sphere_area(n_ - 1)) - weight_(r);
  if (n_ >= 2) out += (n_ - 1) * warp_.log_value(r);
  return out;
}

double WeightedModel::density(double r) const {
  if (n_ >= 2 && r == 0.0) return 0.0;
  return std::exp(log_density(r));
}

double WeightedModel::drift_laplacian_radius(double r) const {
  if (!(r > 0.0)) throw ModelError("drift Laplacian of r is singular at the pole");
  if (r > radius_ * (1.0 + 1e-12)) throw ModelError("radius outside the model domain");
  const double df = weight_.jet(r).d1;
  if (n_ == 1) return -df;
  const RadialJet p = warp_.jet(r);
  return (n_ - 1) * p.d1 / p.value - df;
}

std::string WeightedModel::describe() const {
  std::ostringstream os;
  os << "n=" << n_ << " warp=" << to_string(warp_.family());
  if (warp_.family() == WarpFamily::hyperbolic) os << "(a=" << warp_.params()[0] << ")";
  os << " weight=" << to_string(weight_.family());
  if (weight_.params().size() == 1) os << "(c=" << weight_.params()[0] << ")";
  os << " R=" << radius_ << " bc=" << to_string(bc_);
  return os.str();
}

WarpedProductModel::WarpedProductModel(WeightedModel base, int q, double epsilon)
    : base_(std::move(base)), q_(q), epsilon_(epsilon) {
  if (q_ < 1) throw ModelError("fiber dimension q must be >= 1");
  if (!(epsilon_ > 0.0)) throw ModelError("collapse parameter epsilon must be > 0");
}

WarpedProductModel WarpedProductModel::with_epsilon(double epsilon) const {
  return WarpedProductModel(base_, q_, epsilon);
}

RadialJet WarpedProductModel::fiber_warp(double r) const {
  const RadialJet f = base_.weight().jet(r);
  const double q = q_;
  const double rho = epsilon_ * std::exp(-f.value / q);
  const double d1 = -f.d1 / q * rho;
  const double d2 = (f.d1 * f.d1 / (q * q) - f.d2 / q) * rho;
  return {rho, d1, d2};
}

}  // namespace wmlab::geometry
