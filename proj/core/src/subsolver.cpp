#include "lmsr/subsolver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "lmsr/errors.hpp"
#include "lmsr/eval.hpp"
#include "lmsr/interval.hpp"

namespace lmsr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

UnitConstraintSystem system_for(const Gentree& tree, const std::vector<bool>& gated, const Dataset& data,
                                const SolverConfig& cfg) {
  if (data.units()) return tree_unit_constraints(tree, gated, *data.units(), cfg.dimensioned_constants);
  return unconstrained_system(tree.leaf_count(), static_cast<int>(data.variable_count()));
}

}  // namespace

std::string_view to_string(SolveState state) {
  switch (state) {
    case SolveState::solved: return "solved";
    case SolveState::exhausted: return "exhausted";
    case SolveState::cutoff: return "cutoff";
    case SolveState::timeout: return "timeout";
    case SolveState::paused: return "paused";
  }
  return "unknown";
}

std::vector<std::vector<bool>> gate_patterns(int m, int k) {
  if (m < 0 || k < 0) throw ConfigError("gate patterns need non-negative sizes");
  std::vector<std::vector<bool>> out;
  const int top = std::min(m, k);
  for (int c = 0; c <= top; ++c) {
    std::vector<int> idx(static_cast<std::size_t>(c));
    for (int i = 0; i < c; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::vector<bool> gated(static_cast<std::size_t>(m), false);
      for (int i : idx) gated[static_cast<std::size_t>(i)] = true;
      out.push_back(std::move(gated));
      int pos = c - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - c + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < c; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q) - 1] + 1;
    }
  }
  return out;
}

TreeSolver::TreeSolver(Gentree tree, const Dataset& data, const SolverConfig& cfg)
    : tree_(std::move(tree)),
      data_(data),
      cfg_(cfg),
      fitter_(tree_, data_, cfg_),
      table_(data_, tree_.leaf_count()),
      patterns_(gate_patterns(tree_.leaf_count(), cfg.max_constants)),
      tol_(cfg.effective_tol(data)) {
  if (data.size() == 0) throw ConfigError("dataset is empty");
}

void TreeSolver::open_pattern() {
  powers_.reset();
  while (pattern_ < patterns_.size()) {
    const auto system = system_for(tree_, patterns_[pattern_], data_, cfg_);
    powers_.emplace(system, cfg_.delta, cfg_.tau);
    if (!powers_->inconsistent()) return;
    powers_.reset();
    ++pattern_;
  }
}

TreeSolver::Cursor TreeSolver::cursor() const {
  Cursor c;
  c.pattern = pattern_;
  if (powers_) c.powers = powers_->cursor();
  return c;
}

void TreeSolver::restore(const Cursor& cursor) {
  if (cursor.pattern > patterns_.size()) throw ConfigError("solver cursor does not match the tree");
  final_.reset();
  pattern_ = cursor.pattern;
  powers_.reset();
  if (pattern_ < patterns_.size()) {
    powers_.emplace(system_for(tree_, patterns_[pattern_], data_, cfg_), cfg_.delta, cfg_.tau);
    if (cursor.powers) powers_->restore(*cursor.powers);
  }
}

CandidateModel TreeSolver::make_model(const std::vector<bool>& gated, const ConstantFit& fit) const {
  const std::size_t n = data_.variable_count();
  CandidateModel model{tree_, {}, fit.sse, tree_.node_count()};
  model.params.leaves.resize(static_cast<std::size_t>(tree_.leaf_count()));
  for (std::size_t j = 0; j < model.params.leaves.size(); ++j) {
    auto& leaf = model.params.leaves[j];
    leaf.powers.assign(flat_.begin() + static_cast<std::ptrdiff_t>(j * n),
                       flat_.begin() + static_cast<std::ptrdiff_t>((j + 1) * n));
    leaf.gated = gated[j];
    leaf.constant = gated[j] ? fit.constants[j] : 1.0;
  }
  return model;
}

SolveStatus TreeSolver::run(double budget_s, const SolveControl& control) {
  if (final_) return *final_;
  meter_.emplace(cfg_.time_source, cfg_.work_unit_s);
  BudgetMeter& meter = *meter_;
  const double start_elapsed = elapsed_;
  run_start_ = start_elapsed;
  auto finish = [&](SolveState state, double bound = 0.0) {
    elapsed_ = start_elapsed + meter.elapsed();
    meter_.reset();
    SolveStatus status{state, best_, bound};
    if (state != SolveState::paused) final_ = status;
    return status;
  };
  auto external = [&] { return control.incumbent ? control.incumbent() : kInf; };

  // No tree-level bound beyond zero: only a perfect incumbent cuts the tree.
  if (external() <= 0.0) return finish(SolveState::cutoff, 0.0);
  if (!powers_ && pattern_ == 0) open_pattern();

  bool first = true;
  while (true) {
    const double used = meter.elapsed();
    if (!first) {
      if (start_elapsed + used >= cfg_.time_limit_s) return finish(SolveState::timeout);
      if (used >= budget_s) return finish(SolveState::paused);
      if (control.cancelled && control.cancelled()) return finish(SolveState::paused);
      if (external() <= 0.0) return finish(SolveState::cutoff, 0.0);
    }
    first = false;

    if (!powers_) return finish(SolveState::exhausted);
    if (!powers_->next(flat_)) {
      ++pattern_;
      open_pattern();
      continue;
    }
    ++assignments_;
    const auto& gated = patterns_[pattern_];
    meter.charge(1);
    if (!table_.assign(flat_)) continue;

    const bool any_gated = std::find(gated.begin(), gated.end(), true) != gated.end();
    if (any_gated && cfg_.lower_bound == LowerBoundMethod::interval && !constants_enter_linearly(tree_, gated)) {
      const double threshold = std::min(best_ ? best_->sse : kInf, external());
      if (std::isfinite(threshold)) {
        meter.charge(1);
        if (fitter_.interval_bound(table_, gated) > threshold) continue;
      }
    }

    const ConstantFit fit = fitter_.fit(table_, gated);
    meter.charge(fit.evaluations);
    if (!std::isfinite(fit.sse)) continue;
    CandidateModel model = make_model(gated, fit);
    if (!best_ || better_model(model, *best_)) {
      best_ = std::move(model);
      if (control.on_improvement) control.on_improvement(*best_);
      if (best_->sse <= tol_) return finish(SolveState::solved);
    }
  }
}

SolveStatus solve_gentree(const Gentree& tree, const Dataset& data, const SolverConfig& cfg, double incumbent_sse,
                          double budget_s) {
  TreeSolver solver(tree, data, cfg);
  SolveControl control;
  control.incumbent = [incumbent_sse] { return incumbent_sse; };
  return solver.run(budget_s, control);
}

double lower_bound(const Gentree& tree, const PartialState& state, const Dataset& data, LowerBoundMethod method,
                   double eps_div) {
  if (method == LowerBoundMethod::none) return 0.0;
  const auto m = static_cast<std::size_t>(tree.leaf_count());
  if (state.leaves.size() != m) throw ConfigError("partial state needs one box per leaf");
  const std::size_t n = data.variable_count();

  bool fixed = true;
  for (const auto& leaf : state.leaves) {
    if (leaf.powers.size() != n) throw ConfigError("leaf box powers do not match the dataset");
    if (leaf.gated && !(leaf.lo <= leaf.hi)) throw ConfigError("leaf box has an empty constant range");
    if (leaf.gated && leaf.lo != leaf.hi) fixed = false;
  }
  if (fixed) {
    ParamAssignment params;
    for (const auto& leaf : state.leaves) params.leaves.push_back({leaf.powers, leaf.gated, leaf.gated ? leaf.lo : 1.0});
    return sse(tree, params, data, eps_div);
  }

  std::array<Interval, kMaxTreeNodes> buf;
  const auto nodes = tree.nodes();
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto x = data.row(i);
    for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
      const auto& nd = nodes[idx];
      if (nd.is_leaf) {
        const auto& leaf = state.leaves[static_cast<std::size_t>(nd.leaf)];
        double base = 1.0;
        try {
          for (std::size_t k = 0; k < n; ++k) base *= integer_power(x[k], leaf.powers[k]);
        } catch (const DomainError&) {
          return kInf;
        }
        if (!std::isfinite(base)) return kInf;
        buf[idx] = leaf.gated ? Interval{leaf.lo, leaf.hi, false} * Interval::point(base) : Interval::point(base);
        continue;
      }
      const Interval& a = buf[static_cast<std::size_t>(nd.lhs)];
      switch (nd.op) {
        case Op::Add: buf[idx] = a + buf[static_cast<std::size_t>(nd.rhs)]; break;
        case Op::Sub: buf[idx] = a - buf[static_cast<std::size_t>(nd.rhs)]; break;
        case Op::Mul: buf[idx] = a * buf[static_cast<std::size_t>(nd.rhs)]; break;
        case Op::Div: buf[idx] = divide(a, buf[static_cast<std::size_t>(nd.rhs)], eps_div); break;
        case Op::Sqrt: buf[idx] = sqrt(a); break;
        case Op::Exp: buf[idx] = exp(a); break;
      }
    }
    total += min_square_residual(data.targets()[i], buf[nodes.size() - 1]);
  }
  return total;
}

}  // namespace lmsr
