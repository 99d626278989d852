#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "digwin/window.hpp"

namespace digwin {

struct AnalyzeOptions {
  int delta_n = 1;
  std::optional<int> depth;      // descent depth; default grows to the boundary
  std::size_t iso_cap = 64;      // symmetry search vertex cap
  std::size_t sample_budget = 32;  // self-similarity sample size
};

struct AnalysisOutput {
  nlohmann::json report;
  std::string summary;  // short human-readable digest
};

// Full pipeline: level labelling, reachability/alternets, equal-descendant
// classes, descent profile and property checks, symmetry diagnostics.
// Window-limited verdicts carry notes; caps produce notes rather than errors.
AnalysisOutput analyze(const Window& w, const AnalyzeOptions& opt = {},
                       const std::string& input_name = "");

}  // namespace digwin
