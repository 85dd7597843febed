#pragma once

#include <map>
#include <string>
#include <vector>

#include "wmlab/core/bound_report.hpp"
#include "wmlab/report/run_config.hpp"

namespace wmlab::report {

// A plain table; cells are already formatted (reals as shortest round-trip text).
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct SuiteOutcome {
  std::string suite;
  std::string model;
  std::vector<BoundReport> reports;
  std::vector<Table> tables;
  std::map<std::string, double> values;
  std::map<std::string, std::string> notes;
  std::vector<std::string> skipped;  // checks whose preconditions the model does not meet
  std::string error;                 // set when the suite aborted
  // Aborted, or a hard report failed.
  bool failed() const;
};

struct RunResult {
  std::string config_text;  // fully resolved, without the output directory
  std::vector<SuiteOutcome> outcomes;
  int exit_code = 0;  // 0 all hard checks pass, 1 otherwise
};

// Runs the selected suites on the configured model (or the model matrix),
// model by model, suites in canonical order.
RunResult run(const RunConfig& cfg);

Table report_table(const BoundReport& rep);

}  // namespace wmlab::report
