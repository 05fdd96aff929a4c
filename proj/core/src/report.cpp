#include "lmsr/report.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "lmsr/errors.hpp"
#include "lmsr/render.hpp"

namespace lmsr {

namespace {

using nlohmann::json;

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double get_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError("expected a number, got " + j.dump());
}

json model_json(const CandidateModel& m) {
  json leaves = json::array();
  for (const auto& leaf : m.params.leaves) {
    leaves.push_back({{"powers", leaf.powers}, {"gated", leaf.gated}, {"constant", num(leaf.constant)}});
  }
  return {{"tree", m.tree.serialization()}, {"leaves", leaves}, {"sse", num(m.sse)}, {"complexity", m.complexity}};
}

CandidateModel model_from(const json& j) {
  CandidateModel m;
  m.tree = Gentree::parse(j.at("tree").get<std::string>());
  for (const auto& leaf : j.at("leaves")) {
    m.params.leaves.push_back(
        {leaf.at("powers").get<std::vector<int>>(), leaf.at("gated").get<bool>(), get_num(leaf.at("constant"))});
  }
  m.sse = get_num(j.at("sse"));
  m.complexity = j.at("complexity").get<int>();
  return m;
}

json optional_model(const std::optional<CandidateModel>& m) { return m ? model_json(*m) : json(nullptr); }

std::optional<CandidateModel> optional_model_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return model_from(j);
}

json config_json(const SolverConfig& c) {
  return {{"max_depth", c.max_depth},
          {"max_constants", c.max_constants},
          {"omega", num(c.omega)},
          {"delta", c.delta},
          {"tau", c.tau},
          {"tol", num(c.tol)},
          {"tol_relative", c.tol_relative},
          {"time_limit_s", num(c.time_limit_s)},
          {"eps_div", num(c.eps_div)},
          {"grid_points", c.grid_points},
          {"grid_points_multi", c.grid_points_multi},
          {"multistart", c.multistart},
          {"dimensioned_constants", c.dimensioned_constants},
          {"lower_bound", std::string(to_string(c.lower_bound))},
          {"ops", c.ops.to_string()},
          {"rules", c.rules.to_string()},
          {"canonicalize", c.canonicalize},
          {"threads", c.threads},
          {"slice_s", num(c.slice_s)},
          {"time_source", std::string(to_string(c.time_source))},
          {"work_unit_s", num(c.work_unit_s)}};
}

SolverConfig config_from(const json& j) {
  SolverConfig c;
  c.max_depth = j.at("max_depth").get<int>();
  c.max_constants = j.at("max_constants").get<int>();
  c.omega = get_num(j.at("omega"));
  c.delta = j.at("delta").get<int>();
  c.tau = j.at("tau").get<int>();
  c.tol = get_num(j.at("tol"));
  c.tol_relative = j.at("tol_relative").get<bool>();
  c.time_limit_s = get_num(j.at("time_limit_s"));
  c.eps_div = get_num(j.at("eps_div"));
  c.grid_points = j.at("grid_points").get<int>();
  c.grid_points_multi = j.at("grid_points_multi").get<int>();
  c.multistart = j.at("multistart").get<int>();
  c.dimensioned_constants = j.at("dimensioned_constants").get<bool>();
  const auto lb = j.at("lower_bound").get<std::string>();
  if (lb != "none" && lb != "interval") throw ParseError("unknown lower bound '" + lb + "'");
  c.lower_bound = lb == "none" ? LowerBoundMethod::none : LowerBoundMethod::interval;
  c.ops = OperatorSet::parse(j.at("ops").get<std::string>());
  c.rules = RuleFlags::parse(j.at("rules").get<std::string>());
  c.canonicalize = j.at("canonicalize").get<bool>();
  c.threads = j.at("threads").get<int>();
  c.slice_s = get_num(j.at("slice_s"));
  const auto ts = j.at("time_source").get<std::string>();
  if (ts != "wall" && ts != "work") throw ParseError("unknown time source '" + ts + "'");
  c.time_source = ts == "wall" ? TimeSource::wall : TimeSource::work;
  c.work_unit_s = get_num(j.at("work_unit_s"));
  return c;
}

json phase_json(const PhaseReport& p) {
  json trees = json::array();
  for (const auto& t : p.trees) {
    trees.push_back({{"tree", t.tree},
                     {"depth", t.depth},
                     {"status", std::string(to_string(t.status))},
                     {"best", optional_model(t.best)},
                     {"assignments", t.assignments},
                     {"elapsed_s", num(t.elapsed_s)}});
  }
  json events = json::array();
  for (const auto& e : p.events) {
    events.push_back(
        {{"time_s", num(e.time_s)}, {"tree", e.tree}, {"depth", e.depth}, {"sse", num(e.sse)}, {"solved", e.solved}});
  }
  json slices = json::array();
  for (const auto& s : p.slices) {
    slices.push_back({{"start_s", num(s.start_s)}, {"end_s", num(s.end_s)}, {"trees", s.trees}});
  }
  return {{"ops", p.ops.to_string()},
          {"tol", num(p.tol)},
          {"budget_s", num(p.budget_s)},
          {"elapsed_s", num(p.elapsed_s)},
          {"solved", p.solved},
          {"incumbent", optional_model(p.incumbent)},
          {"answer", optional_model(p.answer)},
          {"trees", trees},
          {"events", events},
          {"slices", slices}};
}

PhaseReport phase_from(const json& j) {
  PhaseReport p;
  p.ops = OperatorSet::parse(j.at("ops").get<std::string>());
  p.tol = get_num(j.at("tol"));
  p.budget_s = get_num(j.at("budget_s"));
  p.elapsed_s = get_num(j.at("elapsed_s"));
  p.solved = j.at("solved").get<bool>();
  p.incumbent = optional_model_from(j.at("incumbent"));
  p.answer = optional_model_from(j.at("answer"));
  for (const auto& t : j.at("trees")) {
    TreeOutcome o;
    o.tree = t.at("tree").get<std::string>();
    o.depth = t.at("depth").get<int>();
    o.status = tree_status_from_string(t.at("status").get<std::string>());
    o.best = optional_model_from(t.at("best"));
    o.assignments = t.at("assignments").get<std::size_t>();
    o.elapsed_s = get_num(t.at("elapsed_s"));
    p.trees.push_back(std::move(o));
  }
  for (const auto& e : j.at("events")) {
    p.events.push_back({get_num(e.at("time_s")), e.at("tree").get<std::size_t>(), e.at("depth").get<int>(),
                        get_num(e.at("sse")), e.at("solved").get<bool>()});
  }
  for (const auto& s : j.at("slices")) {
    p.slices.push_back({get_num(s.at("start_s")), get_num(s.at("end_s")), s.at("trees").get<std::vector<std::size_t>>()});
  }
  return p;
}

}  // namespace

std::string RunReport::status() const {
  if (search.solved) return "solved";
  if (!search.answer) return "no_model";
  if (!search.phases.empty()) {
    for (const auto& t : search.phases.back().trees) {
      if (t.status == TreeStatus::timeout) return "timeout";
    }
  }
  return "exhausted";
}

std::string RunReport::formula() const { return search.answer ? render(*search.answer, variables) : std::string(); }

std::string to_json(const RunReport& report, int indent) {
  json phases = json::array();
  for (const auto& p : report.search.phases) phases.push_back(phase_json(p));
  const json j = {{"label", report.label},
                  {"status", report.status()},
                  {"formula", report.formula()},
                  {"sse", report.search.answer ? num(report.search.answer->sse) : json(nullptr)},
                  {"elapsed_s", num(report.search.elapsed_s)},
                  {"config", config_json(report.config)},
                  {"seed", report.seed},
                  {"noise", num(report.noise)},
                  {"variables", report.variables},
                  {"solved", report.search.solved},
                  {"answer", optional_model(report.search.answer)},
                  {"phases", phases}};
  return j.dump(indent);
}

RunReport report_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.label = j.at("label").get<std::string>();
    r.variables = j.at("variables").get<std::vector<std::string>>();
    r.config = config_from(j.at("config"));
    r.seed = j.at("seed").get<std::uint64_t>();
    r.noise = get_num(j.at("noise"));
    r.search.elapsed_s = get_num(j.at("elapsed_s"));
    r.search.solved = j.at("solved").get<bool>();
    r.search.answer = optional_model_from(j.at("answer"));
    for (const auto& p : j.at("phases")) r.search.phases.push_back(phase_from(p));
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad report: ") + e.what());
  }
}

}  // namespace lmsr
