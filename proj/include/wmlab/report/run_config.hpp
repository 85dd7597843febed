#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wmlab/geometry/model_config.hpp"

namespace wmlab::report {

// Suites in dependency order: curvature supplies K, eigs precede heat.
const std::vector<std::string>& suite_names();

// Model sections plus an optional [run] section:
//
//   [run]
//   suites = [prop31, collapse]
//   matrix = false          # true: the 3 x 4 warp/weight matrix at this n, q, radius
//   grid = 800              # operator intervals
//   tol = 1e-10             # identity tolerance
//   epsilons = [1, 0.5, 0.1, 0.01]
//   averaging = false       # 2D fiber-average check in the heat suite (q = 1)
//   seed = 0
//   out = reports/run1
//   svg = false
struct RunConfig {
  geometry::ModelConfig model;
  std::vector<std::string> suites;  // canonical order, no duplicates
  bool matrix = false;
  std::size_t grid = 800;
  std::optional<double> tol;
  std::vector<double> epsilons{1.0, 0.5, 0.1, 0.01};
  bool averaging = false;
  std::uint64_t seed = 0;
  std::string out;
  bool svg = false;

  static ConfigSchema schema();
  // Throws ConfigError anchored at the offending line.
  static RunConfig parse(const std::string& text);
  // Replaces the suite list; unknown names throw ConfigError(0, ...).
  void select_suites(const std::vector<std::string>& names);
  // Fully resolved text; parse(to_text()) gives back the same config.
  std::string to_text() const;
};

}  // namespace wmlab::report
