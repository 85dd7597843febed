#pragma once

#include <filesystem>
#include <string>

#include "wmlab/report/suites.hpp"

namespace wmlab::report {

inline constexpr int kSchemaVersion = 1;

// Summary with the resolved config, every report and the exit code. Keys keep
// a fixed order and reals print as shortest round-trip text, so equal runs
// give equal bytes.
std::string summary_json(const RunResult& res);
std::string csv(const Table& t);
// Margin per sample, validation samples only; negative margins drawn in red.
std::string margin_svg(const BoundReport& rep);

// Writes summary.json, one CSV per report and table, optional SVGs, and
// metadata.json (timestamp, version and output path, kept out of the summary). The bundle
// is assembled in a sibling temporary directory and renamed into place, so
// `dir` either holds a complete bundle or is left as it was.
void write_bundle(const RunResult& res, const std::filesystem::path& dir, bool svg);

}  // namespace wmlab::report
