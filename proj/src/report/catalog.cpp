#include "wmlab/report/catalog.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "wmlab/core/error.hpp"
#include "wmlab/geometry/catalog.hpp"
#include "wmlab/geometry/comparison.hpp"
#include "wmlab/geometry/curvature.hpp"
#include "wmlab/geometry/volume.hpp"
#include "wmlab/report/run_config.hpp"
#include "wmlab/report/writers.hpp"

namespace wmlab::report {

namespace {

using Json = nlohmann::ordered_json;

struct KeyDoc {
  const char* section;
  const char* key;
  const char* fallback;
  const char* about;
};

const std::vector<KeyDoc>& key_docs() {
  static const std::vector<KeyDoc> docs{
      {"model", "n", "(required)", "base dimension, >= 1"},
      {"model", "q", "1", "fiber dimension of the warped product"},
      {"model", "epsilon", "1", "collapse parameter"},
      {"model", "radius", "(required)", "domain radius"},
      {"model", "bc", "dirichlet", "dirichlet | neumann at the outer radius"},
      {"warp", "family", "euclidean", "euclidean | hyperbolic | tabulated"},
      {"warp", "params", "[]", "family parameters"},
      {"weight", "family", "zero", "zero | quadratic | log_poly | linear_asymptotic | tabulated"},
      {"weight", "params", "[]", "family parameters"},
      {"run", "suites", "all", "subset of the suite names, run in canonical order"},
      {"run", "matrix", "false", "run the 3 x 4 warp/weight matrix at this n, q, epsilon, radius"},
      {"run", "grid", "800", "operator intervals"},
      {"run", "tol", "per check", "identity tolerance override"},
      {"run", "epsilons", "[1, 0.5, 0.1, 0.01]", "collapse sweep, strictly descending"},
      {"run", "averaging", "false", "2D fiber-average check in the heat suite (q = 1)"},
      {"run", "seed", "0", "recorded in the resolved config"},
      {"run", "out", "$WMLAB_OUT_DIR or wmlab-report", "output directory"},
      {"run", "svg", "false", "write margin plots"},
  };
  return docs;
}

std::vector<geometry::NamedModel> filtered(const std::string& property) {
  const auto& names = property_names();
  if (!property.empty() && std::find(names.begin(), names.end(), property) == names.end()) {
    throw ConfigError(0, "unknown property '" + property + "'");
  }
  std::vector<geometry::NamedModel> out;
  for (auto& m : geometry::preset_models()) {
    if (property.empty()) {
      out.push_back(m);
      continue;
    }
    const auto props = model_properties(m.config);
    if (std::find(props.begin(), props.end(), property) != props.end()) out.push_back(m);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{"asymptotically-nonnegative", "nonnegative-curvature",
                                              "subexponential", "exponential", "finite-volume"};
  return names;
}

std::vector<std::string> model_properties(const geometry::ModelConfig& c) {
  const auto model = c.model();
  std::vector<std::string> out;
  if (geometry::asymptotic_nonnegativity_profile(model, c.q).verdict) out.push_back("asymptotically-nonnegative");
  if (geometry::estimate_K(model, c.q) == 0.0) out.push_back("nonnegative-curvature");
  const std::vector<double> eps{0.05, 0.1, 0.5};
  const auto g = geometry::classify_volume_growth(model, eps, geometry::growth_radii(c.radius)).verdict;
  if (g == geometry::GrowthClass::subexponential) out.push_back("subexponential");
  if (g == geometry::GrowthClass::exponential) out.push_back("exponential");
  if (g == geometry::GrowthClass::finite) out.push_back("finite-volume");
  return out;
}

std::string list_models_text(const std::string& property) {
  std::ostringstream os;
  if (property.empty()) {
    os << "families:\n";
    for (const auto& f : geometry::family_catalog()) {
      os << "  " << f.kind << " " << f.name << ": " << f.formula;
      if (!f.params.empty()) {
        os << "  params [";
        for (std::size_t i = 0; i < f.params.size(); ++i) os << (i ? ", " : "") << f.params[i];
        os << "]";
      }
      os << "\n";
    }
  }
  os << "presets" << (property.empty() ? "" : " with " + property) << ":\n";
  for (const auto& m : filtered(property)) {
    const auto& c = m.config;
    os << "  " << m.name << ": n=" << c.n << " q=" << c.q << " radius=" << format_real(c.radius)
       << " warp=" << geometry::to_string(c.warp_family) << " weight=" << geometry::to_string(c.weight_family)
       << " bc=" << geometry::to_string(c.bc) << "\n";
  }
  return os.str();
}

std::string list_models_json(const std::string& property) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json fams = Json::array();
  for (const auto& f : geometry::family_catalog()) {
    fams.push_back(Json{{"kind", f.kind}, {"name", f.name}, {"formula", f.formula}, {"params", f.params}});
  }
  j["families"] = fams;
  if (!property.empty()) j["property"] = property;
  Json presets = Json::array();
  for (const auto& m : filtered(property)) {
    const auto& c = m.config;
    presets.push_back(Json{{"name", m.name},
                           {"n", c.n},
                           {"q", c.q},
                           {"epsilon", c.epsilon},
                           {"radius", c.radius},
                           {"bc", geometry::to_string(c.bc)},
                           {"warp", {{"family", geometry::to_string(c.warp_family)}, {"params", c.warp_params}}},
                           {"weight", {{"family", geometry::to_string(c.weight_family)}, {"params", c.weight_params}}},
                           {"properties", model_properties(c)},
                           {"config", c.to_text()}});
  }
  j["presets"] = presets;
  return j.dump(2) + "\n";
}

std::string schema_text() {
  std::ostringstream os;
  std::string section;
  for (const auto& d : key_docs()) {
    if (d.section != section) {
      section = d.section;
      os << (os.tellp() > 0 ? "\n" : "") << "[" << section << "]\n";
    }
    os << "  " << d.key << " = " << d.fallback << "    # " << d.about << "\n";
  }
  os << "\nsuites:";
  for (const auto& s : suite_names()) os << " " << s;
  os << "\n";
  return os.str();
}

std::string schema_json() {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json sections = Json::object();
  for (const auto& d : key_docs()) {
    sections[d.section][d.key] = Json{{"default", d.fallback}, {"description", d.about}};
  }
  j["sections"] = sections;
  j["suites"] = suite_names();
  j["properties"] = property_names();
  return j.dump(2) + "\n";
}

}  // namespace wmlab::report
