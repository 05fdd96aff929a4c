#include "lmsr/render.hpp"

#include <array>
#include <charconv>

#include "lmsr/errors.hpp"

namespace lmsr {

namespace {

constexpr std::string_view kDot = "·";

std::string render_leaf(const LMonomial& leaf, std::span<const std::string> names) {
  std::string out;
  auto append = [&](const std::string& factor) {
    if (!out.empty()) out += kDot;
    out += factor;
  };
  if (leaf.gated) append(format_constant(leaf.constant));
  for (std::size_t i = 0; i < leaf.powers.size(); ++i) {
    const int p = leaf.powers[i];
    if (p == 0) continue;
    append(p == 1 ? names[i] : names[i] + "^" + std::to_string(p));
  }
  return out.empty() ? "1" : out;
}

int factor_count(const LMonomial& leaf) {
  int c = leaf.gated ? 1 : 0;
  for (int p : leaf.powers) c += p != 0 ? 1 : 0;
  return c;
}

class Renderer {
 public:
  Renderer(const Gentree& tree, const ParamAssignment& params, std::span<const std::string> names)
      : tree_(tree), params_(params), names_(names) {}

  std::string node(int index) const {
    const auto& n = tree_.node(index);
    if (n.is_leaf) return render_leaf(params_.leaves[static_cast<std::size_t>(n.leaf)], names_);
    switch (n.op) {
      case Op::Sqrt:
        return "sqrt(" + node(n.lhs) + ")";
      case Op::Exp:
        return "exp(" + node(n.lhs) + ")";
      case Op::Add:
        return node(n.lhs) + " + " + node(n.rhs);
      case Op::Sub:
        return node(n.lhs) + " - " + wrap_if(n.rhs, is_additive_node(n.rhs));
      case Op::Mul:
        return wrap_if(n.lhs, is_additive_node(n.lhs)) + std::string(kDot) +
               wrap_if(n.rhs, is_additive_node(n.rhs) || is_div_node(n.rhs));
      case Op::Div:
        return wrap_if(n.lhs, is_additive_node(n.lhs)) + " / " + wrap_if(n.rhs, !is_single_factor(n.rhs));
    }
    return {};
  }

 private:
  const Gentree& tree_;
  const ParamAssignment& params_;
  std::span<const std::string> names_;

  bool is_additive_node(int index) const {
    const auto& n = tree_.node(index);
    return !n.is_leaf && is_additive(n.op);
  }
  bool is_div_node(int index) const {
    const auto& n = tree_.node(index);
    return !n.is_leaf && n.op == Op::Div;
  }
  bool is_single_factor(int index) const {
    const auto& n = tree_.node(index);
    if (n.is_leaf) return factor_count(params_.leaves[static_cast<std::size_t>(n.leaf)]) <= 1;
    return n.op == Op::Sqrt || n.op == Op::Exp;
  }
  std::string wrap_if(int index, bool wrap) const {
    std::string s = node(index);
    return wrap ? "(" + s + ")" : s;
  }
};

}  // namespace

std::string format_constant(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string render(const Gentree& tree, const ParamAssignment& params, std::span<const std::string> names) {
  if (params.leaves.size() != static_cast<std::size_t>(tree.leaf_count())) {
    throw ConfigError("assignment does not match tree leaf count");
  }
  for (const auto& leaf : params.leaves) {
    if (leaf.powers.size() != names.size()) throw ConfigError("monomial length does not match variable names");
  }
  return Renderer(tree, params, names).node(tree.root());
}

std::string render(const CandidateModel& model, std::span<const std::string> names) {
  return render(model.tree, model.params, names);
}

}  // namespace lmsr
