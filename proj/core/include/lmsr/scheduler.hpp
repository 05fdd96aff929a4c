#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lmsr/config.hpp"
#include "lmsr/dataset.hpp"
#include "lmsr/enumeration.hpp"
#include "lmsr/model.hpp"

namespace lmsr {

/// Final state of one catalog tree in a search. `cancelled` marks trees
/// stopped because a shallower tree met the tolerance.
enum class TreeStatus { pending, paused, solved, exhausted, cutoff, timeout, cancelled };

std::string_view to_string(TreeStatus status);
TreeStatus tree_status_from_string(std::string_view text);

struct TreeOutcome {
  std::string tree;  // canonical serialization
  int depth = 0;
  TreeStatus status = TreeStatus::pending;
  std::optional<CandidateModel> best;
  std::size_t assignments = 0;
  double elapsed_s = 0.0;

  friend bool operator==(const TreeOutcome&, const TreeOutcome&) = default;
};

/// One improvement of some tree's best model, in the order the coordinator
/// accepted it. `solved` is set only for tolerance-meeting models that were
/// accepted as solutions (not deeper than an earlier solution).
struct SearchEvent {
  double time_s = 0.0;
  std::size_t tree = 0;  // catalog index
  int depth = 0;
  double sse = 0.0;
  bool solved = false;

  friend bool operator==(const SearchEvent&, const SearchEvent&) = default;
};

/// One round-robin slice: the batch of catalog indices run together.
struct SliceRecord {
  double start_s = 0.0;
  double end_s = 0.0;
  std::vector<std::size_t> trees;

  friend bool operator==(const SliceRecord&, const SliceRecord&) = default;
};

struct PhaseReport {
  OperatorSet ops;
  double tol = 0.0;  // absolute SSE threshold used
  double budget_s = 0.0;
  double elapsed_s = 0.0;
  std::vector<TreeOutcome> trees;  // catalog order
  std::vector<SearchEvent> events;
  std::vector<SliceRecord> slices;
  std::optional<CandidateModel> incumbent;  // lowest SSE of the phase
  std::optional<CandidateModel> answer;     // primary answer of the phase
  bool solved = false;

  friend bool operator==(const PhaseReport&, const PhaseReport&) = default;
};

struct SearchReport {
  std::vector<PhaseReport> phases;
  double elapsed_s = 0.0;
  std::optional<CandidateModel> answer;
  bool solved = false;

  friend bool operator==(const SearchReport&, const SearchReport&) = default;
};

/// Round-robin portfolio search over the catalog for cfg.max_depth and
/// cfg.ops using cfg.threads workers and cfg.slice_s slices.
SearchReport search(const Dataset& data, const SolverConfig& cfg);
/// Same, overriding the worker count and slice length.
SearchReport search(const Dataset& data, const SolverConfig& cfg, int threads, double slice_s);

struct RestartPhase {
  OperatorSet ops;
  double tol = 1e-4;
  double budget_s = 600.0;
  std::optional<int> max_constants;  // overrides cfg.max_constants when set

  friend bool operator==(const RestartPhase&, const RestartPhase&) = default;
};

/// {+,*,/,sqrt} at 1e-4 for 600 s, then {+,*,/,exp} at 1e-8 for 100 s.
std::vector<RestartPhase> default_restart_plan();

/// Parses "ops:tol:budget[:k];..." where ops is a comma list.
std::vector<RestartPhase> parse_restart_plan(std::string_view text);

/// Runs one search per phase until a phase solves. Throws ConfigError on an
/// empty plan.
SearchReport search_with_restarts(const Dataset& data, const SolverConfig& cfg, const std::vector<RestartPhase>& plan);

/// Primary answer among `models` (with their catalog indices): the
/// shallowest, then by better_model, then by catalog index. SSEs that differ
/// by at most `sse_tie` count as equal.
std::optional<CandidateModel> pick_primary(const std::vector<std::pair<std::size_t, CandidateModel>>& models,
                                           double sse_tie = 0.0);

/// The SSE tie width used for primary answers: rounding noise relative to
/// the targets' energy.
double sse_tie_width(const Dataset& data);

}  // namespace lmsr
