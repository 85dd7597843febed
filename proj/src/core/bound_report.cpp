#include "wmlab/core/bound_report.hpp"

#include <algorithm>
#include <limits>

namespace wmlab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

void BoundReport::add(std::vector<double> coords, double lhs, double rhs, double margin,
                      std::string split, bool conclusive) {
  samples.push_back(BoundSample{std::move(coords), lhs, rhs, margin, std::move(split), conclusive});
}

double BoundReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    if (s.conclusive && s.split == "validation") m = std::min(m, s.margin);
  }
  return m;
}

std::size_t BoundReport::violations() const {
  return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [](const auto& s) {
    return s.conclusive && s.split == "validation" && !(s.margin >= 0.0);
  }));
}

std::size_t BoundReport::conclusive_count() const {
  return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [](const auto& s) {
    return s.conclusive && s.split == "validation";
  }));
}

Verdict BoundReport::finalize() {
  if (conclusive_count() == 0) {
    verdict = Verdict::inconclusive;
  } else {
    verdict = violations() == 0 ? Verdict::pass : Verdict::fail;
  }
  return verdict;
}

}  // namespace wmlab
