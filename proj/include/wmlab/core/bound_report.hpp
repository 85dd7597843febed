#pragma once

#include <map>
#include <string>
#include <vector>

namespace wmlab {

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);

// One checked point of an inequality or identity. `margin` is the slack
// (rhs - lhs, or log(rhs) - log(lhs) for positive quantities); a negative
// margin on a validation sample is a violation.
struct BoundSample {
  std::vector<double> coords;  // meaning given by BoundReport::coord_names
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::string split = "validation";  // "calibration" | "validation"
  bool conclusive = true;
};

struct BoundReport {
  std::string name;
  std::vector<std::string> coord_names;
  std::vector<BoundSample> samples;
  std::map<std::string, double> constants;  // fitted or frozen constants
  std::map<std::string, std::string> notes;
  std::vector<std::string> warnings;
  Verdict verdict = Verdict::inconclusive;
  bool hard = true;  // failure counts against the exit code

  void add(std::vector<double> coords, double lhs, double rhs, double margin,
           std::string split = "validation", bool conclusive = true);

  // Minimum margin over conclusive validation samples (+inf when none).
  double min_margin() const;
  std::size_t violations() const;
  std::size_t conclusive_count() const;

  // pass iff there is at least one conclusive validation sample and none is
  // negative; inconclusive when every sample is inconclusive.
  Verdict finalize();
};

}  // namespace wmlab
