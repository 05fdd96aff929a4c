#include "lmsr/gentree.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

#include "lmsr/errors.hpp"

namespace lmsr {

Gentree::Gentree() : nodes_{Node{}}, leaf_count_(1), text_("L") { nodes_[0].leaf = 0; }

void Gentree::append_shifted(const Gentree& sub, int& leaf_base) {
  const auto offset = static_cast<std::int16_t>(nodes_.size());
  for (Node n : sub.nodes_) {
    if (n.is_leaf) {
      n.leaf = static_cast<std::int16_t>(n.leaf + leaf_base);
    } else {
      n.lhs = static_cast<std::int16_t>(n.lhs + offset);
      if (n.rhs >= 0) n.rhs = static_cast<std::int16_t>(n.rhs + offset);
    }
    nodes_.push_back(n);
  }
  leaf_base += sub.leaf_count_;
}

void Gentree::finish() {
  if (nodes_.size() > static_cast<std::size_t>(kMaxTreeNodes)) {
    throw ConfigError("gentree exceeds " + std::to_string(kMaxTreeNodes) + " nodes");
  }
  text_ = subtree_serialization(root());
}

Gentree Gentree::unary(Op op, const Gentree& child) {
  if (arity(op) != 1) throw ConfigError("operator " + std::string(symbol(op)) + " is not unary");
  Gentree t;
  t.nodes_.clear();
  int base = 0;
  t.append_shifted(child, base);
  Node n;
  n.is_leaf = false;
  n.op = op;
  n.lhs = static_cast<std::int16_t>(t.nodes_.size() - 1);
  n.height = static_cast<std::int16_t>(child.depth() + 1);
  t.nodes_.push_back(n);
  t.leaf_count_ = base;
  t.finish();
  return t;
}

Gentree Gentree::binary(Op op, const Gentree& lhs, const Gentree& rhs, bool canonicalize) {
  if (arity(op) != 2) throw ConfigError("operator " + std::string(symbol(op)) + " is not binary");
  if (canonicalize && is_commutative(op) && rhs.serialization() < lhs.serialization()) {
    return binary(op, rhs, lhs, false);
  }
  Gentree t;
  t.nodes_.clear();
  int base = 0;
  t.append_shifted(lhs, base);
  const auto left_root = static_cast<std::int16_t>(t.nodes_.size() - 1);
  t.append_shifted(rhs, base);
  Node n;
  n.is_leaf = false;
  n.op = op;
  n.lhs = left_root;
  n.rhs = static_cast<std::int16_t>(t.nodes_.size() - 1);
  n.height = static_cast<std::int16_t>(std::max(lhs.depth(), rhs.depth()) + 1);
  t.nodes_.push_back(n);
  t.leaf_count_ = base;
  t.finish();
  return t;
}

std::string Gentree::subtree_serialization(int index) const {
  const Node& n = node(index);
  if (n.is_leaf) return "L";
  std::string out = "(";
  out += symbol(n.op);
  out += ' ';
  out += subtree_serialization(n.lhs);
  if (n.rhs >= 0) {
    out += ' ';
    out += subtree_serialization(n.rhs);
  }
  out += ')';
  return out;
}

Gentree Gentree::canonical() const {
  // Rebuild bottom-up; binary() sorts commutative children.
  std::vector<Gentree> built;
  built.reserve(nodes_.size());
  for (const Node& n : nodes_) {
    if (n.is_leaf) {
      built.emplace_back();
    } else if (n.rhs < 0) {
      built.push_back(unary(n.op, built[static_cast<std::size_t>(n.lhs)]));
    } else {
      built.push_back(binary(n.op, built[static_cast<std::size_t>(n.lhs)],
                             built[static_cast<std::size_t>(n.rhs)], true));
    }
  }
  return std::move(built.back());
}

namespace {

class PrefixParser {
 public:
  explicit PrefixParser(std::string_view text) : text_(text) {}

  Gentree parse_all() {
    Gentree t = parse_tree();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("gentree '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view token() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    if (start == pos_) fail("expected a token");
    return text_.substr(start, pos_ - start);
  }

  Gentree parse_tree() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (text_[pos_] != '(') {
      if (token() != "L") fail("expected 'L' or '('");
      return Gentree::leaf();
    }
    ++pos_;
    const Op op = parse_op(token());
    Gentree lhs = parse_tree();
    Gentree result;
    if (arity(op) == 1) {
      result = Gentree::unary(op, lhs);
    } else {
      Gentree rhs = parse_tree();
      result = Gentree::binary(op, lhs, rhs, false);
    }
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return result;
  }
};

}  // namespace

Gentree Gentree::parse(std::string_view text) { return PrefixParser(text).parse_all(); }

}  // namespace lmsr
