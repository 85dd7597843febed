#include "wmlab/report/run_config.hpp"

#include <algorithm>
#include <sstream>

#include "wmlab/core/error.hpp"

namespace wmlab::report {

namespace {

int line_of(const ConfigDocument& doc, const std::string& key) {
  const ConfigEntry* e = doc.find("run", key);
  return e ? e->line : doc.section_line("run");
}

bool parse_bool(const ConfigDocument& doc, const std::string& key) {
  const std::string w = doc.get_word("run", key);
  if (w == "true") return true;
  if (w == "false") return false;
  throw ConfigError(line_of(doc, key), key + " must be true or false");
}

std::string join_reals(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_real(v[i]);
  return out + "]";
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"curvature", "prop31", "comparison", "volume",
                                              "eigs",      "collapse", "heat",     "bounds",
                                              "liyau",     "harnack", "weyl",     "lp-cert"};
  return names;
}

ConfigSchema RunConfig::schema() {
  ConfigSchema s = geometry::ModelConfig::schema();
  s["run"] = {"suites", "matrix", "grid", "tol", "epsilons", "averaging", "seed", "out", "svg"};
  return s;
}

void RunConfig::select_suites(const std::vector<std::string>& names) {
  const auto& all = suite_names();
  for (const auto& n : names) {
    if (std::find(all.begin(), all.end(), n) == all.end()) {
      throw ConfigError(0, "unknown suite '" + n + "'");
    }
  }
  suites.clear();
  for (const auto& n : all) {
    if (std::find(names.begin(), names.end(), n) != names.end()) suites.push_back(n);
  }
}

RunConfig RunConfig::parse(const std::string& text) {
  const ConfigDocument doc = ConfigDocument::parse(text, schema());
  RunConfig c;
  c.model = geometry::ModelConfig::from_document(doc);
  c.suites = suite_names();
  if (doc.has("run", "suites")) {
    try {
      c.select_suites(doc.get_words("run", "suites"));
    } catch (const ConfigError& e) {
      throw ConfigError(line_of(doc, "suites"), e.what());
    }
  }
  if (doc.has("run", "matrix")) c.matrix = parse_bool(doc, "matrix");
  if (doc.has("run", "grid")) {
    const int g = doc.get_int("run", "grid");
    if (g < 64) throw ConfigError(line_of(doc, "grid"), "grid must be >= 64 intervals");
    c.grid = static_cast<std::size_t>(g);
  }
  if (doc.has("run", "tol")) {
    c.tol = doc.get_real("run", "tol");
    if (!(*c.tol > 0.0)) throw ConfigError(line_of(doc, "tol"), "tol must be > 0");
  }
  if (doc.has("run", "epsilons")) {
    c.epsilons = doc.get_reals("run", "epsilons");
    if (c.epsilons.empty()) throw ConfigError(line_of(doc, "epsilons"), "epsilons must not be empty");
    for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
      if (!(c.epsilons[i] > 0.0) || (i && !(c.epsilons[i] < c.epsilons[i - 1]))) {
        throw ConfigError(line_of(doc, "epsilons"), "epsilons must be positive and strictly descending");
      }
    }
  }
  if (doc.has("run", "averaging")) c.averaging = parse_bool(doc, "averaging");
  if (doc.has("run", "seed")) {
    const long long s = parse_integer(doc.find("run", "seed")->raw, line_of(doc, "seed"));
    if (s < 0) throw ConfigError(line_of(doc, "seed"), "seed must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (doc.has("run", "out")) c.out = doc.find("run", "out")->raw;
  if (doc.has("run", "svg")) c.svg = parse_bool(doc, "svg");
  return c;
}

std::string RunConfig::to_text() const {
  std::ostringstream os;
  os << model.to_text() << "\n[run]\nsuites = [";
  for (std::size_t i = 0; i < suites.size(); ++i) os << (i ? ", " : "") << suites[i];
  os << "]\n"
     << "matrix = " << (matrix ? "true" : "false") << "\n"
     << "grid = " << grid << "\n";
  if (tol) os << "tol = " << format_real(*tol) << "\n";
  os << "epsilons = " << join_reals(epsilons) << "\n"
     << "averaging = " << (averaging ? "true" : "false") << "\n"
     << "seed = " << seed << "\n";
  if (!out.empty()) os << "out = " << out << "\n";
  os << "svg = " << (svg ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace wmlab::report
