#pragma once

#include <string>
#include <vector>

#include "wmlab/geometry/model_config.hpp"

namespace wmlab::geometry {

struct FamilySchema {
  std::string kind;  // "warp" | "weight"
  std::string name;
  std::string formula;
  std::vector<std::string> params;
};

// Every built-in warp and weight family with its parameter list.
std::vector<FamilySchema> family_catalog();

struct NamedModel {
  std::string name;
  ModelConfig config;
};

// Warps {euclidean, hyperbolic a=1, tabulated r sqrt(1+r^2/4)} crossed with
// weights {zero, quadratic 0.1, log_poly 1, linear_asymptotic 0.5}, all with
// dimension n, fiber q, Dirichlet boundary at `radius`.
std::vector<NamedModel> model_matrix(int n, int q, double epsilon, double radius);

// Warp samples of phi = r sqrt(1 + r^2/4) on [0, radius] with step h.
std::vector<double> tabulated_warp_params(double radius, double h = 0.01);

// Named presets used by list-models.
std::vector<NamedModel> preset_models();

}  // namespace wmlab::geometry
