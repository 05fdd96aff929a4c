#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lmsr/bench.hpp"
#include "lmsr/csv.hpp"
#include "lmsr/dimension.hpp"
#include "lmsr/enumeration.hpp"
#include "lmsr/errors.hpp"
#include "lmsr/noise.hpp"
#include "lmsr/registry.hpp"
#include "lmsr/render.hpp"
#include "lmsr/report.hpp"
#include "lmsr/scheduler.hpp"

namespace lmsr::cli {

namespace {

struct SolverFlags {
  int depth = 3;
  int max_constants = 1;
  double omega = 100.0;
  int delta = 2;
  int tau = 6;
  double tol = 1e-4;
  bool tol_relative = false;
  double time_limit = 600.0;
  int threads = 1;
  double slice = 10.0;
  bool dimensioned_constants = true;
  std::string ops = "add,mul,div,sqrt";
  std::string rules = "all";
  std::string time_source = "wall";
  std::string lower_bound = "interval";
  std::string restart_plan;

  void attach(CLI::App& app) {
    app.add_option("--depth", depth, "Maximum gentree depth")->capture_default_str();
    app.add_option("--max-constants", max_constants, "Maximum number of gated constants")->capture_default_str();
    app.add_option("--omega", omega, "Bound on constant magnitude")->capture_default_str();
    app.add_option("--delta", delta, "Bound on each power")->capture_default_str();
    app.add_option("--tau", tau, "Bound on the sum of |powers| in a leaf")->capture_default_str();
    app.add_option("--tol", tol, "SSE threshold for a solution")->capture_default_str();
    app.add_flag("--tol-relative", tol_relative, "Scale --tol by the sum of squared targets");
    app.add_option("--time-limit", time_limit, "Search time limit in seconds")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads")->capture_default_str();
    app.add_option("--slice", slice, "Round-robin slice in seconds")->capture_default_str();
    app.add_option("--dimensioned-constants", dimensioned_constants, "Let gated constants carry units")
        ->capture_default_str();
    app.add_option("--ops", ops, "Operator list, e.g. add,mul,div,sqrt")->capture_default_str();
    app.add_option("--rules", rules, "Pruning rules: all, none or r1,r2a,r2b,r3,sqrt")->capture_default_str();
    app.add_option("--time-source", time_source, "wall or work")
        ->check(CLI::IsMember({"wall", "work"}))
        ->capture_default_str();
    app.add_option("--lower-bound", lower_bound, "none or interval")
        ->check(CLI::IsMember({"none", "interval"}))
        ->capture_default_str();
    app.add_option("--restart-plan", restart_plan, "Phases as ops:tol:budget[:k];... (\"default\" for the built-in)");
  }

  SolverConfig config() const {
    SolverConfig c;
    c.max_depth = depth;
    c.max_constants = max_constants;
    c.omega = omega;
    c.delta = delta;
    c.tau = tau;
    c.tol = tol;
    c.tol_relative = tol_relative;
    c.time_limit_s = time_limit;
    c.threads = threads;
    c.slice_s = slice;
    c.dimensioned_constants = dimensioned_constants;
    c.ops = OperatorSet::parse(ops);
    c.rules = RuleFlags::parse(rules);
    c.time_source = time_source == "work" ? TimeSource::work : TimeSource::wall;
    c.lower_bound = lower_bound == "none" ? LowerBoundMethod::none : LowerBoundMethod::interval;
    c.validate();
    return c;
  }

  std::optional<std::vector<RestartPhase>> plan() const {
    if (restart_plan.empty()) return std::nullopt;
    if (restart_plan == "default") return default_restart_plan();
    return parse_restart_plan(restart_plan);
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text << '\n';
}

int run_fit(const std::string& data_path, const std::string& units_path, double noise, std::uint64_t seed,
            const std::string& report_out, const SolverFlags& flags, std::ostream& out) {
  const SolverConfig cfg = flags.config();
  Dataset data = load_dataset(data_path, units_path.empty() ? std::nullopt : std::optional<std::string>(units_path));
  data = inject_noise(data, noise, seed);

  RunReport report;
  report.label = data_path;
  report.variables = data.names();
  report.config = cfg;
  report.seed = seed;
  report.noise = noise;
  const auto plan = flags.plan();
  report.search = plan ? search_with_restarts(data, cfg, *plan) : search(data, cfg);

  out << "status: " << report.status() << '\n';
  if (report.search.answer) {
    const auto& m = *report.search.answer;
    out << "model: " << report.formula() << '\n';
    out << "sse: " << format_constant(m.sse) << '\n';
    out << "gentree: " << m.tree.serialization() << '\n';
    if (data.units()) {
      out << "units: " << (check_model_units(m, *data.units(), cfg.dimensioned_constants) ? "consistent" : "VIOLATED")
          << '\n';
    }
  }
  out << "elapsed_s: " << std::fixed << std::setprecision(3) << report.search.elapsed_s << std::defaultfloat << '\n';
  if (!report_out.empty()) write_file(report_out, to_json(report));
  return report.search.answer ? 0 : 2;
}

int run_enumerate(int depth, const std::string& ops, const std::string& rules, const std::string& preset,
                  bool no_canonical, bool print_trees, std::ostream& out) {
  EnumerationOptions options;
  if (preset == "paper-counts") {
    options = paper_counts_preset(depth);
  } else if (!preset.empty()) {
    throw ConfigError("unknown preset '" + preset + "'");
  } else {
    options.depth = depth;
    options.ops = OperatorSet::parse(ops);
    options.rules = RuleFlags::parse(rules);
    options.canonicalize = !no_canonical;
  }
  const GentreeCatalog catalog = enumerate_gentrees(options);
  out << "ops: " << options.ops.to_string() << "  rules: " << options.rules.to_string()
      << "  canonical: " << (options.canonicalize ? "yes" : "no") << '\n';
  out << "depth  count  cumulative\n";
  for (int d = 0; d <= options.depth; ++d) {
    const auto it = catalog.depth_index.find(d);
    const std::size_t count = it == catalog.depth_index.end() ? 0 : it->second.size();
    out << std::setw(5) << d << "  " << std::setw(5) << count << "  " << std::setw(10) << catalog.cumulative_count(d)
        << '\n';
  }
  out << "cumulative count " << catalog.size() << '\n';
  if (print_trees) {
    for (const auto& t : catalog.trees) out << t.serialization() << '\n';
  }
  return 0;
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    if (comma > start) out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

int run_bench(const std::string& labels_text, const std::string& report_out, std::size_t points, std::uint64_t seed,
              double noise, const SolverFlags& flags, std::ostream& out) {
  const SolverConfig cfg = flags.config();
  std::vector<std::string> labels;
  if (labels_text == "all") {
    for (const auto& p : feynman_registry()) labels.push_back(p.label);
  } else {
    labels = split_labels(labels_text);
  }
  BenchmarkOptions options;
  options.points = points;
  options.seed = seed;
  options.noise = noise;
  if (const auto plan = flags.plan()) options.plan = *plan;
  const auto rows = run_benchmark(labels, cfg, cfg.threads, options);
  out << format_benchmark_table(rows);
  if (!report_out.empty()) write_file(report_out, benchmark_to_json(rows));
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"L-monomial gentree symbolic regression", "lmsr"};
  app.require_subcommand(1);

  SolverFlags fit_flags;
  std::string data_path;
  std::string units_path;
  std::string fit_report;
  double noise = 0.0;
  std::uint64_t seed = 0;
  auto* fit = app.add_subcommand("fit", "Search for a formula fitting a CSV dataset");
  fit->add_option("--data", data_path, "Points CSV (header row, target last)")->required();
  fit->add_option("--units", units_path, "Units CSV (name,dim1,...; __target__ row)");
  fit->add_option("--noise", noise, "Relative Gaussian noise added to the targets")->capture_default_str();
  fit->add_option("--seed", seed, "Noise seed")->capture_default_str();
  fit->add_option("--report-out", fit_report, "Write a JSON report here");
  fit_flags.attach(*fit);

  int enum_depth = 3;
  std::string enum_ops = "add,mul,div,sqrt";
  std::string enum_rules = "all";
  std::string preset;
  bool no_canonical = false;
  bool print_trees = false;
  auto* enumerate = app.add_subcommand("enumerate", "Count (and list) the pruned gentree catalog");
  enumerate->add_option("--depth", enum_depth, "Maximum depth")->capture_default_str();
  enumerate->add_option("--ops", enum_ops, "Operator list")->capture_default_str();
  enumerate->add_option("--rules", enum_rules, "Pruning rules")->capture_default_str();
  enumerate->add_option("--preset", preset, "Named configuration (paper-counts)");
  enumerate->add_flag("--no-canonical", no_canonical, "Keep both operand orders of + and *");
  enumerate->add_flag("--print-trees", print_trees, "Print every tree in catalog order");

  SolverFlags bench_flags;
  bench_flags.restart_plan = "default";
  std::string labels = "all";
  std::string bench_report;
  std::size_t points = 10;
  std::uint64_t bench_seed = 1;
  double bench_noise = 0.0;
  auto* bench = app.add_subcommand("bench", "Run registry problems");
  bench->add_option("--labels", labels, "Comma list of registry labels, or all")->capture_default_str();
  bench->add_option("--report-out", bench_report, "Write the JSON table here");
  bench->add_option("--points", points, "Points per problem")->capture_default_str();
  bench->add_option("--seed", bench_seed, "Sampling seed")->capture_default_str();
  bench->add_option("--noise", bench_noise, "Relative Gaussian noise")->capture_default_str();
  bench_flags.attach(*bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* sub = nullptr;
    for (const auto* s : app.get_subcommands()) sub = s;
    err << (sub ? sub->help() : app.help());
    return 1;
  }

  try {
    if (fit->parsed()) return run_fit(data_path, units_path, noise, seed, fit_report, fit_flags, out);
    if (enumerate->parsed()) return run_enumerate(enum_depth, enum_ops, enum_rules, preset, no_canonical, print_trees, out);
    if (bench->parsed()) return run_bench(labels, bench_report, points, bench_seed, bench_noise, bench_flags, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what();
    if (e.line() > 0) err << " (line " << e.line() << ")";
    err << '\n';
    return 1;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << " (line " << e.line() << ")\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace lmsr::cli
