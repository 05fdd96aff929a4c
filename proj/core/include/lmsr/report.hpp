#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lmsr/config.hpp"
#include "lmsr/scheduler.hpp"

namespace lmsr {

/// Everything needed to describe one engine run.
struct RunReport {
  std::string label;
  std::vector<std::string> variables;
  SolverConfig config;
  std::uint64_t seed = 0;
  double noise = 0.0;
  SearchReport search;

  /// "solved", "timeout", "exhausted" (finished with an unsolved incumbent)
  /// or "no_model".
  std::string status() const;
  /// Rendered answer, empty when there is none.
  std::string formula() const;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// JSON with the fields label, status, formula, sse, elapsed_s, config and
/// seed plus the raw answer and every phase. Non-finite numbers are written
/// as the strings "inf", "-inf" and "nan".
std::string to_json(const RunReport& report, int indent = 2);

/// Inverse of to_json. Throws ParseError on malformed input.
RunReport report_from_json(std::string_view text);

}  // namespace lmsr
