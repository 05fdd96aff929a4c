#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lmsr/operator.hpp"

namespace lmsr {

/// Largest node count a gentree may have (depth 5 full binary tree = 63).
inline constexpr int kMaxTreeNodes = 127;

/// A generalized expression tree: operators on internal nodes, undetermined
/// L-monomial slots on the leaves.
///
/// Nodes are stored in postfix order, so every child precedes its parent and
/// the root is the last node. Leaf slots are numbered left to right.
class Gentree {
 public:
  struct Node {
    bool is_leaf = true;
    Op op = Op::Add;
    std::int16_t lhs = -1;  // child index, -1 for leaves
    std::int16_t rhs = -1;  // second child, -1 for leaves and unary nodes
    std::int16_t leaf = -1;  // leaf slot, -1 for internal nodes
    std::int16_t height = 0;
  };

  /// The single-leaf tree (depth 0).
  Gentree();

  static Gentree leaf() { return Gentree(); }
  static Gentree unary(Op op, const Gentree& child);
  /// With `canonicalize`, children of commutative operators are ordered by
  /// serialization.
  static Gentree binary(Op op, const Gentree& lhs, const Gentree& rhs, bool canonicalize = false);

  /// Parses the canonical prefix form, e.g. "(/ L (+ L L))". Throws ParseError.
  static Gentree parse(std::string_view text);

  std::span<const Node> nodes() const noexcept { return nodes_; }
  const Node& node(int index) const { return nodes_[static_cast<std::size_t>(index)]; }
  int root() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
  int depth() const noexcept { return nodes_.back().height; }
  int leaf_count() const noexcept { return leaf_count_; }
  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }

  /// Canonical prefix serialization; doubles as the structural identity key.
  const std::string& serialization() const noexcept { return text_; }

  /// Serialization of the subtree rooted at `index`.
  std::string subtree_serialization(int index) const;

  /// Returns the tree with children of commutative nodes sorted.
  Gentree canonical() const;

  friend bool operator==(const Gentree& a, const Gentree& b) { return a.text_ == b.text_; }

 private:
  std::vector<Node> nodes_;
  int leaf_count_ = 1;
  std::string text_;

  void append_shifted(const Gentree& sub, int& leaf_base);
  void finish();
};

}  // namespace lmsr
