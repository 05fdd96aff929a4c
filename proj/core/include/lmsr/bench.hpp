#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lmsr/config.hpp"
#include "lmsr/report.hpp"
#include "lmsr/scheduler.hpp"

namespace lmsr {

struct BenchmarkOptions {
  std::size_t points = 10;
  std::uint64_t seed = 1;
  double noise = 0.0;
  std::vector<RestartPhase> plan = default_restart_plan();
};

struct BenchmarkRow {
  std::string label;
  bool solved = false;
  bool form_ok = false;  // answer matches the reference law
  bool expected_fail = false;
  double elapsed_s = 0.0;
  double sse = 0.0;
  std::string formula;
  RunReport report;
};

/// Runs search_with_restarts on each registry problem. Throws UnknownLabel
/// before running anything if a label is not in the registry.
std::vector<BenchmarkRow> run_benchmark(const std::vector<std::string>& labels, const SolverConfig& cfg, int threads,
                                        const BenchmarkOptions& options = {});

/// Checks a run's answer against a problem's reference model on fresh probe
/// points; false when either is missing.
bool matches_reference(const RunReport& report, const std::string& label, std::uint64_t probe_seed);

/// Fixed-width human summary, one line per problem.
std::string format_benchmark_table(const std::vector<BenchmarkRow>& rows);

/// Machine-readable table: a JSON array of run reports.
std::string benchmark_to_json(const std::vector<BenchmarkRow>& rows);

}  // namespace lmsr
