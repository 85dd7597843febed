#pragma once

#include <string>
#include <vector>

#include "wmlab/geometry/model_config.hpp"

namespace wmlab::report {

// Property names understood by `list-models --property`.
const std::vector<std::string>& property_names();

// Properties a preset satisfies: asymptotically-nonnegative,
// nonnegative-curvature (K = 0), subexponential, exponential, finite-volume.
std::vector<std::string> model_properties(const geometry::ModelConfig& c);

// Families and presets, optionally only presets having `property`.
std::string list_models_text(const std::string& property = "");
std::string list_models_json(const std::string& property = "");
// Config sections and keys with their defaults.
std::string schema_text();
std::string schema_json();

}  // namespace wmlab::report
