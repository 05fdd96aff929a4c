#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "lmsr/clock.hpp"
#include "lmsr/config.hpp"
#include "lmsr/dataset.hpp"
#include "lmsr/dimension.hpp"
#include "lmsr/fit.hpp"
#include "lmsr/gentree.hpp"
#include "lmsr/model.hpp"

namespace lmsr {

enum class SolveState { solved, exhausted, cutoff, timeout, paused };

std::string_view to_string(SolveState state);

struct SolveStatus {
  SolveState state = SolveState::exhausted;
  std::optional<CandidateModel> model;  // best model of this tree so far
  double bound = 0.0;                   // proven lower bound for CUTOFF
};

/// Hooks the scheduler uses to share state with a running solve. Every
/// member may be empty.
struct SolveControl {
  std::function<double()> incumbent;                        // best SSE known elsewhere
  std::function<bool()> cancelled;                          // polled between assignments
  std::function<void(const CandidateModel&)> on_improvement;
};

/// Every gate pattern with at most `k` gated leaves among `m`: fewest
/// constants first, then lexicographic by the gated leaf indices.
std::vector<std::vector<bool>> gate_patterns(int m, int k);

/// Resumable exhaustive solver for one gentree.
class TreeSolver {
 public:
  struct Cursor {
    std::size_t pattern = 0;
    std::optional<FeasiblePowerEnumerator::Cursor> powers;

    friend bool operator==(const Cursor&, const Cursor&) = default;
  };

  TreeSolver(Gentree tree, const Dataset& data, const SolverConfig& cfg);
  TreeSolver(const TreeSolver&) = delete;
  TreeSolver& operator=(const TreeSolver&) = delete;

  /// Works for at most `budget_s` (at least one assignment) and reports
  /// SOLVED, PAUSED, TIMEOUT, CUTOFF or EXHAUSTED. Once a terminal state is
  /// returned, later calls return it again.
  SolveStatus run(double budget_s, const SolveControl& control = {});

  const Gentree& tree() const noexcept { return tree_; }
  const std::optional<CandidateModel>& best() const noexcept { return best_; }
  Cursor cursor() const;
  /// Resumes from a cursor taken from a solver over the same tree and data.
  void restore(const Cursor& cursor);
  std::size_t assignments() const noexcept { return assignments_; }
  /// Budget used over all runs, in the configured time source; includes the
  /// current run when called from inside a control hook.
  double elapsed() const noexcept { return meter_ ? run_start_ + meter_->elapsed() : elapsed_; }

 private:
  Gentree tree_;
  const Dataset& data_;
  const SolverConfig& cfg_;
  ConstantFitter fitter_;
  LeafTable table_;
  std::vector<std::vector<bool>> patterns_;
  double tol_;

  std::size_t pattern_ = 0;
  std::optional<FeasiblePowerEnumerator> powers_;
  std::optional<SolveStatus> final_;
  std::optional<CandidateModel> best_;
  std::size_t assignments_ = 0;
  double elapsed_ = 0.0;
  double run_start_ = 0.0;
  std::optional<BudgetMeter> meter_;
  std::vector<int> flat_;

  void open_pattern();
  CandidateModel make_model(const std::vector<bool>& gated, const ConstantFit& fit) const;
};

/// One-shot solve: a fresh TreeSolver run once against a fixed incumbent.
SolveStatus solve_gentree(const Gentree& tree, const Dataset& data, const SolverConfig& cfg,
                          double incumbent_sse, double budget_s);

/// One leaf of a partially assigned model: fixed powers, and for a gated
/// leaf the remaining interval of its constant.
struct LeafBox {
  std::vector<int> powers;
  bool gated = false;
  double lo = 1.0;
  double hi = 1.0;
};

struct PartialState {
  std::vector<LeafBox> leaves;
};

/// Lower bound on the SSE of every completion of `state`. `none` returns 0;
/// `interval` uses interval arithmetic and returns the exact SSE when every
/// constant is fixed.
double lower_bound(const Gentree& tree, const PartialState& state, const Dataset& data, LowerBoundMethod method,
                   double eps_div = kDefaultEpsDiv);

}  // namespace lmsr
