#include "lmsr/scheduler.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <climits>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

#include "lmsr/errors.hpp"
#include "lmsr/subsolver.hpp"

namespace lmsr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxDepth = 5;

bool is_active(TreeStatus s) { return s == TreeStatus::pending || s == TreeStatus::paused; }

void store_min(std::atomic<double>& cell, double value) {
  double cur = cell.load();
  while (value < cur && !cell.compare_exchange_weak(cur, value)) {
  }
}

struct Shared {
  std::mutex mu;
  std::vector<SearchEvent> events;
  std::array<std::atomic<double>, kMaxDepth + 1> best_by_depth;
  std::atomic<int> solved_depth{INT_MAX};

  Shared() {
    for (auto& c : best_by_depth) c.store(kInf);
  }

  double incumbent_up_to(int depth) const {
    double best = kInf;
    for (int d = 0; d <= depth; ++d) best = std::min(best, best_by_depth[static_cast<std::size_t>(d)].load());
    return best;
  }
};

PhaseReport run_phase(const Dataset& data, const SolverConfig& cfg) {
  cfg.validate();
  const GentreeCatalog catalog = enumerate_gentrees(cfg.enumeration());
  const std::size_t count = catalog.size();

  PhaseReport rep;
  rep.ops = cfg.ops;
  rep.tol = cfg.effective_tol(data);
  rep.budget_s = cfg.time_limit_s;
  rep.trees.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    rep.trees[i].tree = catalog.trees[i].serialization();
    rep.trees[i].depth = catalog.trees[i].depth();
  }

  Shared shared;
  std::vector<std::unique_ptr<TreeSolver>> solvers(count);
  std::vector<double> base_elapsed(count, 0.0);
  const auto wall_start = std::chrono::steady_clock::now();
  auto wall_now = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count(); };
  double now = 0.0;
  double slice_start = 0.0;

  auto control_for = [&](std::size_t idx) {
    const int depth = rep.trees[idx].depth;
    SolveControl c;
    c.incumbent = [&shared, depth] { return shared.incumbent_up_to(depth); };
    c.cancelled = [&shared, depth] { return depth > shared.solved_depth.load(); };
    c.on_improvement = [&, idx, depth](const CandidateModel& model) {
      std::lock_guard lock(shared.mu);
      SearchEvent ev;
      ev.time_s = slice_start + (solvers[idx]->elapsed() - base_elapsed[idx]);
      ev.tree = idx;
      ev.depth = depth;
      ev.sse = model.sse;
      if (model.sse <= rep.tol && depth <= shared.solved_depth.load()) {
        ev.solved = true;
        shared.solved_depth.store(depth);
      }
      shared.events.push_back(ev);
      store_min(shared.best_by_depth[static_cast<std::size_t>(depth)], model.sse);
    };
    return c;
  };

  auto run_one = [&](std::size_t idx, double budget) {
    if (!solvers[idx]) solvers[idx] = std::make_unique<TreeSolver>(catalog.trees[idx], data, cfg);
    return solvers[idx]->run(budget, control_for(idx));
  };

  std::size_t next = 0;
  while (true) {
    const int sd = shared.solved_depth.load();
    for (auto& t : rep.trees) {
      if (is_active(t.status) && t.depth > sd) t.status = TreeStatus::cancelled;
    }
    std::vector<std::size_t> batch;
    for (std::size_t step = 0; step < count && batch.size() < static_cast<std::size_t>(cfg.threads); ++step) {
      const std::size_t idx = (next + step) % count;
      if (is_active(rep.trees[idx].status)) batch.push_back(idx);
    }
    if (batch.empty()) break;
    if (now >= cfg.time_limit_s) {
      for (auto& t : rep.trees) {
        if (is_active(t.status)) t.status = TreeStatus::timeout;
      }
      break;
    }
    next = (batch.back() + 1) % count;
    const double budget = std::min(cfg.slice_s, cfg.time_limit_s - now);
    slice_start = now;
    for (std::size_t idx : batch) base_elapsed[idx] = solvers[idx] ? solvers[idx]->elapsed() : 0.0;

    std::vector<SolveStatus> results(batch.size());
    if (batch.size() == 1) {
      results[0] = run_one(batch[0], budget);
    } else {
      std::vector<std::exception_ptr> errors(batch.size());
      std::vector<std::thread> workers;
      workers.reserve(batch.size());
      for (std::size_t w = 0; w < batch.size(); ++w) {
        workers.emplace_back([&, w] {
          try {
            results[w] = run_one(batch[w], budget);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : workers) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }

    double used = 0.0;
    for (std::size_t idx : batch) used = std::max(used, solvers[idx]->elapsed() - base_elapsed[idx]);
    now = cfg.time_source == TimeSource::work ? slice_start + used : wall_now();
    rep.slices.push_back({slice_start, now, batch});

    const int solved_depth = shared.solved_depth.load();
    for (std::size_t w = 0; w < batch.size(); ++w) {
      auto& t = rep.trees[batch[w]];
      switch (results[w].state) {
        case SolveState::solved:
          t.status = t.depth > solved_depth ? TreeStatus::cancelled : TreeStatus::solved;
          break;
        case SolveState::paused:
          t.status = t.depth > solved_depth ? TreeStatus::cancelled : TreeStatus::paused;
          break;
        case SolveState::exhausted: t.status = TreeStatus::exhausted; break;
        case SolveState::cutoff: t.status = TreeStatus::cutoff; break;
        case SolveState::timeout: t.status = TreeStatus::timeout; break;
      }
    }
  }

  rep.elapsed_s = cfg.time_source == TimeSource::work ? now : wall_now();
  rep.events = std::move(shared.events);
  std::vector<std::pair<std::size_t, CandidateModel>> solved;
  for (std::size_t i = 0; i < count; ++i) {
    auto& t = rep.trees[i];
    if (!solvers[i]) continue;
    t.best = solvers[i]->best();
    t.assignments = solvers[i]->assignments();
    t.elapsed_s = solvers[i]->elapsed();
    if (t.best && (!rep.incumbent || better_model(*t.best, *rep.incumbent))) rep.incumbent = t.best;
    if (t.status == TreeStatus::solved && t.best) solved.emplace_back(i, *t.best);
  }
  rep.solved = !solved.empty();
  rep.answer = rep.solved ? pick_primary(solved, sse_tie_width(data)) : rep.incumbent;
  return rep;
}

double parse_double(std::string_view text, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string("bad ") + what + " '" + std::string(text) + "' in restart plan");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(TreeStatus status) {
  switch (status) {
    case TreeStatus::pending: return "pending";
    case TreeStatus::paused: return "paused";
    case TreeStatus::solved: return "solved";
    case TreeStatus::exhausted: return "exhausted";
    case TreeStatus::cutoff: return "cutoff";
    case TreeStatus::timeout: return "timeout";
    case TreeStatus::cancelled: return "cancelled";
  }
  return "unknown";
}

TreeStatus tree_status_from_string(std::string_view text) {
  for (auto s : {TreeStatus::pending, TreeStatus::paused, TreeStatus::solved, TreeStatus::exhausted,
                 TreeStatus::cutoff, TreeStatus::timeout, TreeStatus::cancelled}) {
    if (to_string(s) == text) return s;
  }
  throw ParseError("unknown tree status '" + std::string(text) + "'");
}

double sse_tie_width(const Dataset& data) { return 1e-20 * data.target_energy(); }

std::optional<CandidateModel> pick_primary(const std::vector<std::pair<std::size_t, CandidateModel>>& models,
                                           double sse_tie) {
  auto preferred = [sse_tie](const CandidateModel& a, const CandidateModel& b) {
    if (std::fabs(a.sse - b.sse) > sse_tie) return a.sse < b.sse;
    if (simpler_than(a.params, b.params)) return true;
    if (simpler_than(b.params, a.params)) return false;
    return a.sse < b.sse;
  };
  const std::pair<std::size_t, CandidateModel>* best = nullptr;
  for (const auto& entry : models) {
    if (!best) {
      best = &entry;
      continue;
    }
    const int da = entry.second.tree.depth();
    const int db = best->second.tree.depth();
    if (da != db) {
      if (da < db) best = &entry;
      continue;
    }
    if (preferred(entry.second, best->second)) {
      best = &entry;
    } else if (!preferred(best->second, entry.second) && entry.first < best->first) {
      best = &entry;
    }
  }
  if (!best) return std::nullopt;
  return best->second;
}

SearchReport search(const Dataset& data, const SolverConfig& cfg) {
  SearchReport report;
  report.phases.push_back(run_phase(data, cfg));
  report.elapsed_s = report.phases.back().elapsed_s;
  report.answer = report.phases.back().answer;
  report.solved = report.phases.back().solved;
  return report;
}

SearchReport search(const Dataset& data, const SolverConfig& cfg, int threads, double slice_s) {
  SolverConfig c = cfg;
  c.threads = threads;
  c.slice_s = slice_s;
  return search(data, c);
}

std::vector<RestartPhase> default_restart_plan() {
  return {{OperatorSet::standard(), 1e-4, 600.0, std::nullopt}, {OperatorSet::with_exp(), 1e-8, 100.0, std::nullopt}};
}

std::vector<RestartPhase> parse_restart_plan(std::string_view text) {
  std::vector<RestartPhase> plan;
  for (auto item : split(text, ';')) {
    if (item.empty()) continue;
    const auto parts = split(item, ':');
    if (parts.size() != 3 && parts.size() != 4) {
      throw ConfigError("restart phase '" + std::string(item) + "' must read ops:tol:budget[:k]");
    }
    RestartPhase phase;
    phase.ops = OperatorSet::parse(parts[0]);
    phase.tol = parse_double(parts[1], "tolerance");
    phase.budget_s = parse_double(parts[2], "budget");
    if (parts.size() == 4) phase.max_constants = static_cast<int>(parse_double(parts[3], "constant count"));
    plan.push_back(std::move(phase));
  }
  if (plan.empty()) throw ConfigError("restart plan is empty");
  return plan;
}

SearchReport search_with_restarts(const Dataset& data, const SolverConfig& cfg, const std::vector<RestartPhase>& plan) {
  if (plan.empty()) throw ConfigError("restart plan is empty");
  SearchReport report;
  std::optional<CandidateModel> best;
  for (const auto& phase : plan) {
    SolverConfig c = cfg;
    c.ops = phase.ops;
    c.tol = phase.tol;
    c.time_limit_s = phase.budget_s;
    if (phase.max_constants) c.max_constants = *phase.max_constants;
    report.phases.push_back(run_phase(data, c));
    const PhaseReport& p = report.phases.back();
    report.elapsed_s += p.elapsed_s;
    if (p.incumbent && (!best || better_model(*p.incumbent, *best))) best = p.incumbent;
    if (p.solved) {
      report.solved = true;
      report.answer = p.answer;
      return report;
    }
  }
  report.answer = best;
  return report;
}

}  // namespace lmsr
