#include "lmsr/eval.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace lmsr {

double integer_power(double x, int e) {
  if (e == 0) return 1.0;
  if (x == 0.0) {
    if (e < 0) throw DomainError(DomainErrorKind::zero_to_negative_power);
    return 0.0;
  }
  unsigned n = static_cast<unsigned>(e < 0 ? -e : e);
  double result = 1.0;
  double base = x;
  while (n != 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n != 0) base *= base;
  }
  if (e < 0) result = 1.0 / result;
  if (!std::isfinite(result)) throw DomainError(DomainErrorKind::overflow);
  return result;
}

int power_norm(std::span<const int> powers) {
  int s = 0;
  for (int p : powers) s += p < 0 ? -p : p;
  return s;
}

double eval_lmonomial(const LMonomial& leaf, std::span<const double> x) {
  if (leaf.powers.size() != x.size()) {
    throw ConfigError("monomial has " + std::to_string(leaf.powers.size()) + " powers for " +
                      std::to_string(x.size()) + " variables");
  }
  // Monomial first, constant last: the solver's leaf tables round the same way.
  double v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (leaf.powers[i] != 0) v *= integer_power(x[i], leaf.powers[i]);
  }
  if (leaf.gated) v *= leaf.constant;
  if (!std::isfinite(v)) throw DomainError(DomainErrorKind::overflow);
  return v;
}

EvalOutcome evaluate_with_leaf_values(const Gentree& tree, std::span<const double> leaf_values,
                                      double eps_div) noexcept {
  std::array<double, kMaxTreeNodes> buf;
  const auto nodes = tree.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.is_leaf) {
      buf[i] = leaf_values[static_cast<std::size_t>(n.leaf)];
      continue;
    }
    const double a = buf[static_cast<std::size_t>(n.lhs)];
    double r = 0.0;
    switch (n.op) {
      case Op::Add:
        r = a + buf[static_cast<std::size_t>(n.rhs)];
        break;
      case Op::Sub:
        r = a - buf[static_cast<std::size_t>(n.rhs)];
        break;
      case Op::Mul:
        r = a * buf[static_cast<std::size_t>(n.rhs)];
        break;
      case Op::Div: {
        const double b = buf[static_cast<std::size_t>(n.rhs)];
        if (!(std::fabs(b) >= eps_div)) return {0.0, DomainErrorKind::div_by_zero};
        r = a / b;
        break;
      }
      case Op::Sqrt:
        if (a < 0.0) return {0.0, DomainErrorKind::sqrt_negative};
        r = std::sqrt(a);
        break;
      case Op::Exp:
        r = std::exp(a);
        break;
    }
    if (!std::isfinite(r)) return {0.0, DomainErrorKind::overflow};
    buf[i] = r;
  }
  return {buf[nodes.size() - 1], std::nullopt};
}

double eval_gentree(const Gentree& tree, const ParamAssignment& params, std::span<const double> x,
                    double eps_div) {
  if (params.leaves.size() != static_cast<std::size_t>(tree.leaf_count())) {
    throw ConfigError("assignment has " + std::to_string(params.leaves.size()) + " leaves, tree has " +
                      std::to_string(tree.leaf_count()));
  }
  std::array<double, kMaxTreeNodes> leaves;
  for (std::size_t j = 0; j < params.leaves.size(); ++j) leaves[j] = eval_lmonomial(params.leaves[j], x);
  const EvalOutcome out = evaluate_with_leaf_values(tree, {leaves.data(), params.leaves.size()}, eps_div);
  if (out.error) throw DomainError(*out.error);
  return out.value;
}

double sse(const Gentree& tree, const ParamAssignment& params, const Dataset& data, double eps_div) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double f = 0.0;
    try {
      f = eval_gentree(tree, params, data.row(i), eps_div);
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
    const double r = data.targets()[i] - f;
    total += r * r;
  }
  return std::isfinite(total) ? total : std::numeric_limits<double>::infinity();
}

}  // namespace lmsr
