#pragma once

#include <string_view>

#include "lmsr/dataset.hpp"
#include "lmsr/enumeration.hpp"
#include "lmsr/eval.hpp"
#include "lmsr/model.hpp"

namespace lmsr {

/// How budgets and timestamps are measured. `work` charges a fixed amount of
/// virtual time per pass over the data, which makes single-thread
/// runs bit-reproducible.
enum class TimeSource { wall, work };

enum class LowerBoundMethod { none, interval };

std::string_view to_string(TimeSource source);
std::string_view to_string(LowerBoundMethod method);

struct SolverConfig {
  int max_depth = 3;         // d
  int max_constants = 1;     // k
  double omega = 100.0;      // |h| <= omega
  int delta = 2;             // |p| <= delta
  int tau = 6;               // per-leaf sum |p| <= tau
  double tol = 1e-4;         // SSE at or below this counts as solved
  bool tol_relative = false; // when set, tol is scaled by the sum of squared targets
  double time_limit_s = 600.0;
  double eps_div = kDefaultEpsDiv;
  int grid_points = 2001;       // per dimension, single constant
  int grid_points_multi = 101;  // per dimension, two or more constants
  int multistart = 3;           // grid minima refined locally
  bool dimensioned_constants = true;
  LowerBoundMethod lower_bound = LowerBoundMethod::interval;

  OperatorSet ops = OperatorSet::standard();
  RuleFlags rules = RuleFlags::all();
  bool canonicalize = true;

  int threads = 1;
  double slice_s = 10.0;
  TimeSource time_source = TimeSource::wall;
  double work_unit_s = 1e-6;  // virtual seconds per pass over the data

  ParamBounds bounds() const { return {delta, tau, omega, max_constants}; }
  EnumerationOptions enumeration() const { return {max_depth, ops, rules, canonicalize}; }
  /// The absolute SSE threshold for `data`.
  double effective_tol(const Dataset& data) const;
  /// Throws ConfigError on non-positive bounds or tolerances.
  void validate() const;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

}  // namespace lmsr
