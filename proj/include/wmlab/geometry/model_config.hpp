#pragma once

#include <string>
#include <vector>

#include "wmlab/core/config_text.hpp"
#include "wmlab/geometry/model.hpp"

namespace wmlab::geometry {

// Resolved contents of the [model], [warp] and [weight] sections.
//
//   [model]                 [warp]                 [weight]
//   n = 2                   family = euclidean     family = log_poly
//   q = 2                   params = []            params = [1]
//   epsilon = 0.5
//   radius = 20
//   bc = dirichlet
//
// n and radius are required; q = 1, epsilon = 1, bc = dirichlet,
// warp = euclidean, weight = zero otherwise.
struct ModelConfig {
  int n = 0;
  int q = 1;
  double epsilon = 1.0;
  double radius = 0.0;
  BoundaryCondition bc = BoundaryCondition::dirichlet;
  WarpFamily warp_family = WarpFamily::euclidean;
  std::vector<double> warp_params;
  WeightFamily weight_family = WeightFamily::zero;
  std::vector<double> weight_params;

  static ConfigSchema schema();
  // Reads the model sections of an already parsed document; other sections
  // are ignored here. Validates by building the model.
  static ModelConfig from_document(const ConfigDocument& doc);
  static ModelConfig parse(const std::string& text);

  WeightedModel model() const;
  WarpedProductModel product() const;

  // Canonical text; parse(to_text()) reproduces every field bit for bit.
  std::string to_text() const;

  bool operator==(const ModelConfig&) const = default;
};

}  // namespace wmlab::geometry
