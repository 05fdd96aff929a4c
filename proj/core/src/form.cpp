#include "lmsr/form.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "lmsr/errors.hpp"
#include "lmsr/eval.hpp"

namespace lmsr {

namespace {

// Laurent polynomial: exponent vector -> coefficient.
using Poly = std::map<std::vector<int>, double>;

struct Ratio {
  Poly num;
  Poly den;
};

Poly product(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  return out;
}

Poly combine(const Poly& a, const Poly& b, double sign) {
  Poly out = a;
  for (const auto& [e, c] : b) out[e] += sign * c;
  return out;
}

std::optional<Ratio> to_ratio(const CandidateModel& m) {
  const auto& tree = m.tree;
  std::vector<Ratio> buf(static_cast<std::size_t>(tree.node_count()));
  for (int i = 0; i < tree.node_count(); ++i) {
    const auto& n = tree.node(i);
    auto& out = buf[static_cast<std::size_t>(i)];
    if (n.is_leaf) {
      const auto& leaf = m.params.leaves[static_cast<std::size_t>(n.leaf)];
      out.num[leaf.powers] = leaf.gated ? leaf.constant : 1.0;
      out.den[std::vector<int>(leaf.powers.size(), 0)] = 1.0;
      continue;
    }
    const Ratio& a = buf[static_cast<std::size_t>(n.lhs)];
    switch (n.op) {
      case Op::Add:
      case Op::Sub: {
        const Ratio& b = buf[static_cast<std::size_t>(n.rhs)];
        out.num = combine(product(a.num, b.den), product(b.num, a.den), n.op == Op::Add ? 1.0 : -1.0);
        out.den = product(a.den, b.den);
        break;
      }
      case Op::Mul: {
        const Ratio& b = buf[static_cast<std::size_t>(n.rhs)];
        out.num = product(a.num, b.num);
        out.den = product(a.den, b.den);
        break;
      }
      case Op::Div: {
        const Ratio& b = buf[static_cast<std::size_t>(n.rhs)];
        out.num = product(a.num, b.den);
        out.den = product(a.den, b.num);
        break;
      }
      case Op::Sqrt:
      case Op::Exp:
        return std::nullopt;
    }
  }
  return buf.back();
}

double max_abs(const Poly& p) {
  double m = 0.0;
  for (const auto& [e, c] : p) m = std::max(m, std::fabs(c));
  return m;
}

}  // namespace

std::optional<bool> same_rational_form(const CandidateModel& a, const CandidateModel& b, double rel_tol) {
  const auto ra = to_ratio(a);
  const auto rb = to_ratio(b);
  if (!ra || !rb) return std::nullopt;
  const Poly lhs = product(ra->num, rb->den);
  const Poly rhs = product(rb->num, ra->den);
  const double scale = std::max(max_abs(lhs), max_abs(rhs));
  if (scale == 0.0) return true;
  // A zero denominator polynomial means the model is undefined everywhere.
  if (max_abs(ra->den) == 0.0 || max_abs(rb->den) == 0.0) return false;
  for (const auto& [e, c] : combine(lhs, rhs, -1.0)) {
    if (std::fabs(c) > rel_tol * scale) return false;
  }
  return true;
}

bool same_functional_form(const CandidateModel& a, const CandidateModel& b, const Dataset& probe, double rel_tol) {
  if (const auto symbolic = same_rational_form(a, b, rel_tol)) return *symbolic;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    double va = 0.0;
    double vb = 0.0;
    try {
      va = eval_gentree(a.tree, a.params, probe.row(i));
      vb = eval_gentree(b.tree, b.params, probe.row(i));
    } catch (const DomainError&) {
      return false;
    }
    const double scale = std::max({std::fabs(va), std::fabs(vb), 1e-300});
    if (std::fabs(va - vb) > rel_tol * scale) return false;
  }
  return true;
}

bool same_power_pattern(const CandidateModel& a, const CandidateModel& b) {
  if (!(a.tree == b.tree) || a.params.leaves.size() != b.params.leaves.size()) return false;
  for (std::size_t j = 0; j < a.params.leaves.size(); ++j) {
    const auto& la = a.params.leaves[j];
    const auto& lb = b.params.leaves[j];
    if (la.powers != lb.powers || la.gated != lb.gated) return false;
  }
  return true;
}

}  // namespace lmsr
