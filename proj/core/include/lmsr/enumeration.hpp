#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lmsr/gentree.hpp"
#include "lmsr/operator.hpp"

namespace lmsr {

struct OperatorSet {
  std::vector<Op> binary;
  std::vector<Op> unary;

  /// {+, *, /, sqrt}: subtraction dropped, signs come from constants.
  static OperatorSet standard();
  /// {+, *, /, exp}: the restart set with sqrt swapped for exp.
  static OperatorSet with_exp();
  /// Comma separated names or symbols, e.g. "add,mul,div,sqrt".
  static OperatorSet parse(std::string_view list);

  bool contains(Op op) const;
  bool empty() const noexcept { return binary.empty() && unary.empty(); }
  std::string to_string() const;

  friend bool operator==(const OperatorSet&, const OperatorSet&) = default;
};

enum class PruneRule { R1, R2a, R2b, R3, SqrtLeaf };

std::string_view to_string(PruneRule rule);

struct RuleFlags {
  bool r1 = true;
  bool r2a = true;
  bool r2b = true;
  bool r3 = true;
  bool sqrt_leaf = true;

  static RuleFlags all() { return {}; }
  static RuleFlags none() { return {false, false, false, false, false}; }
  /// "all", "none" or a comma list of r1,r2a,r2b,r3,sqrt.
  static RuleFlags parse(std::string_view list);

  bool enabled(PruneRule rule) const;
  std::string to_string() const;

  friend bool operator==(const RuleFlags&, const RuleFlags&) = default;
};

/// `rule` is set iff the tree must be removed.
struct PruneVerdict {
  std::optional<PruneRule> rule;

  bool keep() const noexcept { return !rule.has_value(); }
};

/// Checks every subexpression against R1 (L*L, L/L), R2a (L*(L±L)),
/// R2b ((L±L)*(L±L)), R3 ((L±L)/L) and sqrt(L); reports the first rule that
/// matches in that order. "L" means a leaf slot.
PruneVerdict prune(const Gentree& tree, const RuleFlags& rules = RuleFlags::all());

/// Total node count.
int complexity(const Gentree& tree);

struct EnumerationOptions {
  int depth = 3;
  OperatorSet ops = OperatorSet::standard();
  RuleFlags rules = RuleFlags::all();
  bool canonicalize = true;
};

/// {+, *, /, sqrt}, canonical commutative children, every rule enabled.
EnumerationOptions paper_counts_preset(int depth);

/// Structurally distinct surviving gentrees sorted by (complexity, serialization).
struct GentreeCatalog {
  std::vector<Gentree> trees;
  std::map<int, std::vector<std::size_t>> depth_index;

  std::size_t size() const noexcept { return trees.size(); }
  bool empty() const noexcept { return trees.empty(); }
  /// Number of trees with depth <= d.
  std::size_t cumulative_count(int d) const;
};

/// Enumerates every gentree of depth <= options.depth over options.ops that
/// survives pruning. Throws ConfigError for an empty operator set or a
/// negative depth.
GentreeCatalog enumerate_gentrees(const EnumerationOptions& options);

}  // namespace lmsr
