#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lmsr/gentree.hpp"
#include "lmsr/model.hpp"
#include "lmsr/units.hpp"

namespace lmsr {

/// sum_k coeffs[k] * p[k] = rhs, where p is the flattened power vector
/// (leaf-major: p[j * n + i] is the power of variable i in leaf j).
struct LinearEquation {
  std::vector<Rational> coeffs;
  Rational rhs;
};

/// Linear equations over the integer powers of one gentree under one
/// constant-gate pattern. Leaves carrying a dimensioned constant are free.
struct UnitConstraintSystem {
  int leaf_count = 0;
  int variable_count = 0;
  std::vector<LinearEquation> equations;
  std::vector<bool> free_leaves;

  int unknowns() const noexcept { return leaf_count * variable_count; }
  /// True when `powers` (length unknowns()) satisfies every equation exactly.
  bool satisfied_by(std::span<const int> powers) const;
};

/// Builds the system that forces the tree's units to equal the target's.
/// ADD/SUB children share the parent's units, MUL children sum to it, DIV is
/// left minus right, SQRT's child has twice the parent's units and EXP needs
/// a dimensionless argument. With `dimensioned_constants`, a gated leaf may
/// carry any unit and its equation drops out.
/// Throws ConfigError when `gated` or `units` do not fit the tree.
UnitConstraintSystem tree_unit_constraints(const Gentree& tree, const std::vector<bool>& gated,
                                           const UnitsTable& units, bool dimensioned_constants);

/// A system with no equations over `leaf_count` x `variable_count` powers.
UnitConstraintSystem unconstrained_system(int leaf_count, int variable_count);

/// Resumable lexicographic walk over the integer power vectors with
/// |p| <= delta, per-leaf sum |p| <= tau, satisfying a UnitConstraintSystem.
///
/// The equalities are reduced once over the rationals with pivots chosen
/// from the right, so each determined power depends only on earlier free
/// powers; a depth-first walk over the free powers then visits solutions in
/// lexicographic order and cuts branches as soon as a bound is violated.
class FeasiblePowerEnumerator {
 public:
  struct Cursor {
    std::vector<int> values;
    int level = 0;
    bool descending = true;
    bool started = false;
    bool done = false;

    friend bool operator==(const Cursor&, const Cursor&) = default;
  };

  FeasiblePowerEnumerator(const UnitConstraintSystem& system, int delta, int tau);

  /// True when the equalities alone have no rational solution.
  bool inconsistent() const noexcept { return inconsistent_; }

  /// Writes the next assignment into `out` (resized to unknowns()).
  bool next(std::vector<int>& out);

  const Cursor& cursor() const noexcept { return cursor_; }
  void restore(const Cursor& cursor);
  void reset();

 private:
  struct Dependent {
    std::int64_t pivot_coeff = 1;
    std::int64_t rhs = 0;
    std::vector<std::pair<int, std::int64_t>> terms;  // (free position, coefficient)
  };

  int unknowns_ = 0;
  int per_leaf_ = 0;
  int delta_ = 0;
  int tau_ = 0;
  bool inconsistent_ = false;
  std::vector<int> dependent_of_;  // index into dependents_, or -1 for a free position
  std::vector<Dependent> dependents_;
  std::vector<int> leaf_partial_;  // running sum |p| within the leaf up to a position
  Cursor cursor_;

  bool assign(int position, int value);
  bool dependent_value(int position, int& value) const;
};

/// Materializes every assignment FeasiblePowerEnumerator yields.
std::vector<std::vector<int>> feasible_power_sets(const UnitConstraintSystem& system, int delta, int tau);

/// Audits a model's concrete powers against the unit equations for its own
/// gate pattern.
bool check_model_units(const CandidateModel& model, const UnitsTable& units, bool dimensioned_constants);

}  // namespace lmsr
