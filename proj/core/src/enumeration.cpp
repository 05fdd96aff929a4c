#include "lmsr/enumeration.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

#include "lmsr/errors.hpp"

namespace lmsr {

OperatorSet OperatorSet::standard() { return {{Op::Add, Op::Mul, Op::Div}, {Op::Sqrt}}; }

OperatorSet OperatorSet::with_exp() { return {{Op::Add, Op::Mul, Op::Div}, {Op::Exp}}; }

OperatorSet OperatorSet::parse(std::string_view list) {
  OperatorSet set;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    std::string_view tok = list.substr(start, comma - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty()) {
      const Op op = parse_op(tok);
      auto& bucket = arity(op) == 1 ? set.unary : set.binary;
      if (std::find(bucket.begin(), bucket.end(), op) == bucket.end()) bucket.push_back(op);
    }
    start = comma + 1;
  }
  auto by_enum = [](Op a, Op b) { return static_cast<int>(a) < static_cast<int>(b); };
  std::sort(set.binary.begin(), set.binary.end(), by_enum);
  std::sort(set.unary.begin(), set.unary.end(), by_enum);
  return set;
}

bool OperatorSet::contains(Op op) const {
  const auto& bucket = arity(op) == 1 ? unary : binary;
  return std::find(bucket.begin(), bucket.end(), op) != bucket.end();
}

std::string OperatorSet::to_string() const {
  std::string out;
  for (Op op : binary) out += (out.empty() ? "" : ",") + std::string(name(op));
  for (Op op : unary) out += (out.empty() ? "" : ",") + std::string(name(op));
  return out;
}

std::string_view to_string(PruneRule rule) {
  switch (rule) {
    case PruneRule::R1: return "R1";
    case PruneRule::R2a: return "R2a";
    case PruneRule::R2b: return "R2b";
    case PruneRule::R3: return "R3";
    case PruneRule::SqrtLeaf: return "SQRT-L";
  }
  return "?";
}

RuleFlags RuleFlags::parse(std::string_view list) {
  if (list == "all") return all();
  if (list == "none" || list.empty()) return none();
  RuleFlags f = none();
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    std::string tok(list.substr(start, comma - start));
    std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) { return std::tolower(c); });
    if (tok == "r1") {
      f.r1 = true;
    } else if (tok == "r2a") {
      f.r2a = true;
    } else if (tok == "r2b") {
      f.r2b = true;
    } else if (tok == "r3") {
      f.r3 = true;
    } else if (tok == "sqrt" || tok == "sqrt-l") {
      f.sqrt_leaf = true;
    } else if (!tok.empty()) {
      throw ParseError("unknown pruning rule '" + tok + "'");
    }
    start = comma + 1;
  }
  return f;
}

bool RuleFlags::enabled(PruneRule rule) const {
  switch (rule) {
    case PruneRule::R1: return r1;
    case PruneRule::R2a: return r2a;
    case PruneRule::R2b: return r2b;
    case PruneRule::R3: return r3;
    case PruneRule::SqrtLeaf: return sqrt_leaf;
  }
  return false;
}

std::string RuleFlags::to_string() const {
  if (*this == all()) return "all";
  if (*this == none()) return "none";
  std::string out;
  auto add = [&](bool on, const char* n) {
    if (on) out += (out.empty() ? "" : ",") + std::string(n);
  };
  add(r1, "r1");
  add(r2a, "r2a");
  add(r2b, "r2b");
  add(r3, "r3");
  add(sqrt_leaf, "sqrt");
  return out;
}

namespace {

bool is_leaf(const Gentree& t, int i) { return t.node(i).is_leaf; }

// L ± L with both operands leaf slots.
bool is_leaf_sum(const Gentree& t, int i) {
  const auto& n = t.node(i);
  return !n.is_leaf && is_additive(n.op) && is_leaf(t, n.lhs) && is_leaf(t, n.rhs);
}

bool matches(const Gentree& t, int i, PruneRule rule) {
  const auto& n = t.node(i);
  if (n.is_leaf) return false;
  switch (rule) {
    case PruneRule::R1:
      return (n.op == Op::Mul || n.op == Op::Div) && is_leaf(t, n.lhs) && is_leaf(t, n.rhs);
    case PruneRule::R2a:
      return n.op == Op::Mul && ((is_leaf(t, n.lhs) && is_leaf_sum(t, n.rhs)) ||
                                 (is_leaf_sum(t, n.lhs) && is_leaf(t, n.rhs)));
    case PruneRule::R2b:
      return n.op == Op::Mul && is_leaf_sum(t, n.lhs) && is_leaf_sum(t, n.rhs);
    case PruneRule::R3:
      return n.op == Op::Div && is_leaf_sum(t, n.lhs) && is_leaf(t, n.rhs);
    case PruneRule::SqrtLeaf:
      return n.op == Op::Sqrt && is_leaf(t, n.lhs);
  }
  return false;
}

}  // namespace

PruneVerdict prune(const Gentree& tree, const RuleFlags& rules) {
  for (PruneRule rule : {PruneRule::R1, PruneRule::R2a, PruneRule::R2b, PruneRule::R3, PruneRule::SqrtLeaf}) {
    if (!rules.enabled(rule)) continue;
    for (int i = 0; i < tree.node_count(); ++i) {
      if (matches(tree, i, rule)) return {rule};
    }
  }
  return {};
}

int complexity(const Gentree& tree) { return tree.node_count(); }

EnumerationOptions paper_counts_preset(int depth) {
  return {depth, OperatorSet::standard(), RuleFlags::all(), true};
}

std::size_t GentreeCatalog::cumulative_count(int d) const {
  std::size_t n = 0;
  for (const auto& [depth, idx] : depth_index) {
    if (depth <= d) n += idx.size();
  }
  return n;
}

GentreeCatalog enumerate_gentrees(const EnumerationOptions& options) {
  if (options.ops.empty()) throw ConfigError("operator set is empty");
  if (options.depth < 0) throw ConfigError("depth must be non-negative");
  if (options.depth > 5) throw ConfigError("enumeration beyond depth 5 is not supported");

  // levels[d] holds the survivors of exact depth d. A tree whose children
  // survive only needs its root checked, but prune() is cheap enough to run
  // on the whole tree and keeps the definition in one place.
  std::vector<std::vector<Gentree>> levels(static_cast<std::size_t>(options.depth) + 1);
  levels[0].push_back(Gentree::leaf());
  std::set<std::string> seen{"L"};

  auto admit = [&](Gentree&& t, std::vector<Gentree>& out) {
    if (!prune(t, options.rules).keep()) return;
    if (!seen.insert(t.serialization()).second) return;
    out.push_back(std::move(t));
  };

  for (int d = 1; d <= options.depth; ++d) {
    auto& out = levels[static_cast<std::size_t>(d)];
    const auto& exact = levels[static_cast<std::size_t>(d) - 1];
    std::vector<const Gentree*> shallower;
    for (int e = 0; e < d; ++e) {
      for (const auto& t : levels[static_cast<std::size_t>(e)]) shallower.push_back(&t);
    }
    for (Op op : options.ops.unary) {
      for (const auto& child : exact) admit(Gentree::unary(op, child), out);
    }
    for (Op op : options.ops.binary) {
      for (const Gentree* a : shallower) {
        for (const Gentree* b : shallower) {
          if (a->depth() != d - 1 && b->depth() != d - 1) continue;
          if (options.canonicalize && is_commutative(op) && b->serialization() < a->serialization()) continue;
          admit(Gentree::binary(op, *a, *b, false), out);
        }
      }
    }
  }

  GentreeCatalog catalog;
  for (auto& level : levels) {
    for (auto& t : level) catalog.trees.push_back(std::move(t));
  }
  std::sort(catalog.trees.begin(), catalog.trees.end(), [](const Gentree& a, const Gentree& b) {
    if (a.node_count() != b.node_count()) return a.node_count() < b.node_count();
    return a.serialization() < b.serialization();
  });
  for (std::size_t i = 0; i < catalog.trees.size(); ++i) {
    catalog.depth_index[catalog.trees[i].depth()].push_back(i);
  }
  return catalog;
}

}  // namespace lmsr
