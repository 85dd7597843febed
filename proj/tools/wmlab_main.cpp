#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wmlab/core/bound_report.hpp"
#include "wmlab/core/error.hpp"
#include "wmlab/report/catalog.hpp"
#include "wmlab/report/run_config.hpp"
#include "wmlab/report/suites.hpp"
#include "wmlab/report/writers.hpp"

namespace {

constexpr int kConfigError = 2;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f || !std::filesystem::is_regular_file(path)) throw wmlab::ConfigError(0, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string default_out() {
  const char* env = std::getenv("WMLAB_OUT_DIR");
  return env && *env ? env : "wmlab-report";
}

void print_summary(const wmlab::report::RunResult& res, const std::string& out) {
  for (const auto& o : res.outcomes) {
    std::cout << (o.failed() ? "FAIL " : "ok   ") << o.model << " " << o.suite;
    if (!o.error.empty()) std::cout << "  error: " << o.error;
    for (const auto& r : o.reports) {
      std::cout << "\n       " << r.name << ": " << wmlab::to_string(r.verdict)
                << (r.hard ? "" : " (soft)") << ", " << r.conclusive_count() << " conclusive, "
                << r.violations() << " violations";
    }
    for (const auto& s : o.skipped) std::cout << "\n       skipped: " << s;
    std::cout << "\n";
  }
  std::cout << "report written to " << out << " (exit " << res.exit_code << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wmlab: numerical checks on rotationally symmetric weighted manifolds"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run verification suites on a model config");
  std::string config_path, out_dir, suites;
  std::size_t grid = 0;
  double tol = 0.0;
  bool svg = false;
  run->add_option("--config", config_path, "model config file")->required();
  run->add_option("--out", out_dir, "output directory (default $WMLAB_OUT_DIR or wmlab-report)");
  run->add_option("--suite", suites, "comma-separated suite names");
  run->add_option("--grid", grid, "operator intervals")->check(CLI::Range(64, 1 << 20));
  run->add_option("--tol", tol, "identity tolerance")->check(CLI::PositiveNumber);
  run->add_flag("--svg", svg, "write margin plots");

  auto* list = app.add_subcommand("list-models", "list model families and presets");
  bool list_json = false;
  std::string property;
  list->add_flag("--json", list_json, "machine-readable output");
  list->add_option("--property", property, "only presets with this property")
      ->check(CLI::IsMember(wmlab::report::property_names()));

  auto* schema = app.add_subcommand("schema", "print the config schema");
  bool schema_json = false;
  schema->add_flag("--json", schema_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*list) {
      std::cout << (list_json ? wmlab::report::list_models_json(property)
                              : wmlab::report::list_models_text(property));
      return 0;
    }
    if (*schema) {
      std::cout << (schema_json ? wmlab::report::schema_json() : wmlab::report::schema_text());
      return 0;
    }

    auto cfg = wmlab::report::RunConfig::parse(read_file(config_path));
    if (!suites.empty()) {
      std::vector<std::string> names;
      std::stringstream ss(suites);
      for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) names.push_back(item);
      }
      cfg.select_suites(names);
    }
    if (grid) cfg.grid = grid;
    if (tol > 0.0) cfg.tol = tol;
    if (svg) cfg.svg = true;
    if (!out_dir.empty()) cfg.out = out_dir;
    if (cfg.out.empty()) cfg.out = default_out();

    const auto res = wmlab::report::run(cfg);
    wmlab::report::write_bundle(res, cfg.out, cfg.svg);
    print_summary(res, cfg.out);
    return res.exit_code;
  } catch (const wmlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
