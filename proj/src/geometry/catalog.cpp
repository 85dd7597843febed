#include "wmlab/geometry/catalog.hpp"

#include <cmath>

namespace wmlab::geometry {

std::vector<FamilySchema> family_catalog() {
  return {
      {"warp", "euclidean", "phi = r", {}},
      {"warp", "hyperbolic", "phi = sinh(a r)/a", {"a > 0"}},
      {"warp", "tabulated", "cubic spline, phi(0)=0, phi'(0)=1", {"h", "phi_0", "phi_1", "..."}},
      {"weight", "zero", "f = 0", {}},
      {"weight", "quadratic", "f = c r^2", {"c"}},
      {"weight", "log_poly", "f = c log(1 + r^2)", {"c"}},
      {"weight", "linear_asymptotic", "f = c sqrt(1 + r^2)", {"c"}},
      {"weight", "tabulated", "cubic spline, f'(0)=0", {"h", "f_0", "f_1", "..."}},
  };
}

std::vector<double> tabulated_warp_params(double radius, double h) {
  const auto count = static_cast<std::size_t>(std::ceil(radius / h)) + 3;
  std::vector<double> p{h};
  for (std::size_t i = 0; i < count; ++i) {
    const double r = static_cast<double>(i) * h;
    p.push_back(r * std::sqrt(1.0 + r * r / 4.0));
  }
  return p;
}

std::vector<NamedModel> model_matrix(int n, int q, double epsilon, double radius) {
  struct Warp {
    const char* name;
    WarpFamily family;
    std::vector<double> params;
  };
  struct Weight {
    const char* name;
    WeightFamily family;
    std::vector<double> params;
  };
  const std::vector<Warp> warps = {{"euclidean", WarpFamily::euclidean, {}},
                                   {"hyperbolic", WarpFamily::hyperbolic, {1.0}},
                                   {"tabulated", WarpFamily::tabulated,
                                    tabulated_warp_params(radius)}};
  const std::vector<Weight> weights = {{"zero", WeightFamily::zero, {}},
                                       {"quadratic", WeightFamily::quadratic, {0.1}},
                                       {"log_poly", WeightFamily::log_poly, {1.0}},
                                       {"linear_asymptotic", WeightFamily::linear_asymptotic, {0.5}}};
  std::vector<NamedModel> out;
  for (const auto& w : warps) {
    for (const auto& f : weights) {
      ModelConfig c;
      c.n = n;
      c.q = q;
      c.epsilon = epsilon;
      c.radius = radius;
      c.warp_family = w.family;
      c.warp_params = w.params;
      c.weight_family = f.family;
      c.weight_params = f.params;
      out.push_back({std::string(w.name) + "/" + f.name, std::move(c)});
    }
  }
  return out;
}

std::vector<NamedModel> preset_models() {
  auto make = [](const char* name, int n, int q, WarpFamily wf, std::vector<double> wp,
                 WeightFamily ff, std::vector<double> fp, double radius, BoundaryCondition bc) {
    ModelConfig c;
    c.n = n;
    c.q = q;
    c.radius = radius;
    c.bc = bc;
    c.warp_family = wf;
    c.warp_params = std::move(wp);
    c.weight_family = ff;
    c.weight_params = std::move(fp);
    return NamedModel{name, c};
  };
  using B = BoundaryCondition;
  return {
      make("flat3", 3, 1, WarpFamily::euclidean, {}, WeightFamily::zero, {}, 20.0, B::dirichlet),
      make("hyperbolic3", 3, 1, WarpFamily::hyperbolic, {1.0}, WeightFamily::zero, {}, 20.0,
           B::dirichlet),
      make("log_weighted_plane", 2, 2, WarpFamily::euclidean, {}, WeightFamily::log_poly, {1.0},
           20.0, B::dirichlet),
      make("ornstein_uhlenbeck", 1, 1, WarpFamily::euclidean, {}, WeightFamily::quadratic, {0.5},
           12.0, B::neumann),
      make("gaussian_plane", 2, 1, WarpFamily::euclidean, {}, WeightFamily::quadratic, {0.5}, 10.0,
           B::dirichlet),
      make("linear_weight_hyperbolic", 2, 1, WarpFamily::hyperbolic, {1.0},
           WeightFamily::linear_asymptotic, {0.5}, 20.0, B::dirichlet),
  };
}

}  // namespace wmlab::geometry
