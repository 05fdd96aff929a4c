#include "lmsr/bench.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "lmsr/form.hpp"
#include "lmsr/noise.hpp"
#include "lmsr/registry.hpp"

namespace lmsr {

namespace {

constexpr std::size_t kProbePoints = 50;

}  // namespace

bool matches_reference(const RunReport& report, const std::string& label, std::uint64_t probe_seed) {
  const ProblemSpec& problem = find_problem(label);
  const auto expected = problem.expected_model();
  if (!expected || !report.search.answer) return false;
  const Dataset probe = problem.generate(kProbePoints, probe_seed);
  return same_functional_form(*report.search.answer, *expected, probe);
}

std::vector<BenchmarkRow> run_benchmark(const std::vector<std::string>& labels, const SolverConfig& cfg, int threads,
                                        const BenchmarkOptions& options) {
  for (const auto& label : labels) (void)find_problem(label);
  std::vector<BenchmarkRow> rows;
  for (const auto& label : labels) {
    const ProblemSpec& problem = find_problem(label);
    const Dataset data = inject_noise(problem.generate(options.points, options.seed), options.noise, options.seed);
    SolverConfig c = cfg;
    c.threads = threads;

    BenchmarkRow row;
    row.label = label;
    row.expected_fail = problem.expected_fail;
    row.report.label = label;
    row.report.variables = problem.names();
    row.report.config = c;
    row.report.seed = options.seed;
    row.report.noise = options.noise;
    row.report.search = search_with_restarts(data, c, options.plan);
    row.solved = row.report.search.solved;
    row.form_ok = row.solved && matches_reference(row.report, label, options.seed + 1000);
    row.elapsed_s = row.report.search.elapsed_s;
    row.sse = row.report.search.answer ? row.report.search.answer->sse : 0.0;
    row.formula = row.report.formula();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_benchmark_table(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s %-8s %-5s %10s %12s  %s\n", "label", "status", "form", "time_s", "sse",
                "formula");
  out << buf;
  std::size_t solved = 0;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-10s %-8s %-5s %10.2f %12.4g  ", r.label.c_str(), r.solved ? "solved" : "failed",
                  r.form_ok ? "yes" : "no", r.elapsed_s, r.sse);
    out << buf << r.formula << (r.expected_fail ? "  (expected to fail)" : "") << '\n';
    solved += r.solved ? 1 : 0;
  }
  out << solved << "/" << rows.size() << " solved\n";
  return out.str();
}

std::string benchmark_to_json(const std::vector<BenchmarkRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    auto j = nlohmann::json::parse(to_json(r.report, -1));
    j["form_ok"] = r.form_ok;
    j["expected_fail"] = r.expected_fail;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

}  // namespace lmsr
