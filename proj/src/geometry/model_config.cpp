#include "wmlab/geometry/model_config.hpp"

#include <sstream>

#include "wmlab/core/error.hpp"

namespace wmlab::geometry {

namespace {

std::string format_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_real(v[i]);
  }
  return out + "]";
}

int line_of(const ConfigDocument& doc, const std::string& section, const std::string& key) {
  const ConfigEntry* e = doc.find(section, key);
  return e ? e->line : doc.section_line(section);
}

}  // namespace

ConfigSchema ModelConfig::schema() {
  return {{"model", {"n", "q", "epsilon", "radius", "bc"}},
          {"warp", {"family", "params"}},
          {"weight", {"family", "params"}}};
}

ModelConfig ModelConfig::from_document(const ConfigDocument& doc) {
  ModelConfig c;
  c.n = doc.get_int("model", "n");
  if (c.n < 1) throw ConfigError(line_of(doc, "model", "n"), "n must be >= 1");
  c.radius = doc.get_real("model", "radius");
  if (!(c.radius > 0.0)) throw ConfigError(line_of(doc, "model", "radius"), "radius must be > 0");
  if (doc.has("model", "q")) {
    c.q = doc.get_int("model", "q");
    if (c.q < 1) throw ConfigError(line_of(doc, "model", "q"), "q must be >= 1");
  }
  if (doc.has("model", "epsilon")) {
    c.epsilon = doc.get_real("model", "epsilon");
    if (!(c.epsilon > 0.0)) {
      throw ConfigError(line_of(doc, "model", "epsilon"), "epsilon must be > 0");
    }
  }
  try {
    if (doc.has("model", "bc")) c.bc = parse_boundary_condition(doc.get_word("model", "bc"));
  } catch (const ModelError& e) {
    throw ConfigError(line_of(doc, "model", "bc"), e.what());
  }
  try {
    if (doc.has("warp", "family")) c.warp_family = parse_warp_family(doc.get_word("warp", "family"));
  } catch (const ModelError& e) {
    throw ConfigError(line_of(doc, "warp", "family"), e.what());
  }
  if (doc.has("warp", "params")) c.warp_params = doc.get_reals("warp", "params");
  try {
    if (doc.has("weight", "family")) {
      c.weight_family = parse_weight_family(doc.get_word("weight", "family"));
    }
  } catch (const ModelError& e) {
    throw ConfigError(line_of(doc, "weight", "family"), e.what());
  }
  if (doc.has("weight", "params")) c.weight_params = doc.get_reals("weight", "params");

  // Family/parameter mismatches surface as model errors; anchor them to the section.
  try {
    (void)RadialWarpFunction::from_params(c.warp_family, c.warp_params);
  } catch (const ModelError& e) {
    throw ConfigError(line_of(doc, "warp", "params"), e.what());
  }
  try {
    (void)WeightFunction::from_params(c.weight_family, c.weight_params);
  } catch (const ModelError& e) {
    throw ConfigError(line_of(doc, "weight", "params"), e.what());
  }
  try {
    (void)c.model();
  } catch (const ModelError& e) {
    throw ConfigError(line_of(doc, "model", "radius"), e.what());
  }
  return c;
}

ModelConfig ModelConfig::parse(const std::string& text) {
  return from_document(ConfigDocument::parse(text, schema()));
}

WeightedModel ModelConfig::model() const {
  return WeightedModel(n, RadialWarpFunction::from_params(warp_family, warp_params),
                       WeightFunction::from_params(weight_family, weight_params), radius, bc);
}

WarpedProductModel ModelConfig::product() const { return WarpedProductModel(model(), q, epsilon); }

std::string ModelConfig::to_text() const {
  std::ostringstream os;
  os << "[model]\n"
     << "n = " << n << "\n"
     << "q = " << q << "\n"
     << "epsilon = " << format_real(epsilon) << "\n"
     << "radius = " << format_real(radius) << "\n"
     << "bc = " << to_string(bc) << "\n"
     << "\n[warp]\n"
     << "family = " << to_string(warp_family) << "\n"
     << "params = " << format_array(warp_params) << "\n"
     << "\n[weight]\n"
     << "family = " << to_string(weight_family) << "\n"
     << "params = " << format_array(weight_params) << "\n";
  return os.str();
}

}  // namespace wmlab::geometry
