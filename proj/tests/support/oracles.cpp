#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>

#include "lmsr/eval.hpp"

namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
  std::string op;  // empty for a leaf
  std::vector<std::unique_ptr<Node>> kids;
  bool leaf() const { return op.empty(); }
};

std::unique_ptr<Node> parse_prefix(const std::string& s, std::size_t& i) {
  auto n = std::make_unique<Node>();
  if (s[i] == 'L') {
    ++i;
    return n;
  }
  ++i;  // '('
  const auto sp = s.find(' ', i);
  n->op = s.substr(i, sp - i);
  i = sp;
  while (s[i] == ' ') {
    ++i;
    n->kids.push_back(parse_prefix(s, i));
  }
  ++i;  // ')'
  return n;
}

bool sum_of_leaves(const Node& n) {
  return (n.op == "+" || n.op == "-") && n.kids[0]->leaf() && n.kids[1]->leaf();
}

void collect(const Node& n, std::vector<const Node*>& out) {
  out.push_back(&n);
  for (const auto& k : n.kids) collect(*k, out);
}

}  // namespace

std::set<std::string> all_gentrees(int depth, const std::vector<std::string>& binary,
                                   const std::vector<std::string>& unary, bool canonical) {
  std::set<std::string> level{"L"};
  for (int d = 1; d <= depth; ++d) {
    std::set<std::string> next{"L"};
    for (const auto& u : unary) {
      for (const auto& a : level) next.insert("(" + u + " " + a + ")");
    }
    for (const auto& b : binary) {
      const bool commutes = canonical && (b == "+" || b == "*");
      for (const auto& a : level) {
        for (const auto& c : level) {
          if (commutes && c < a) continue;
          next.insert("(" + b + " " + a + " " + c + ")");
        }
      }
    }
    level = std::move(next);
  }
  return level;
}

std::optional<std::string> first_rule(const std::string& tree) {
  std::size_t i = 0;
  const auto root = parse_prefix(tree, i);
  std::vector<const Node*> nodes;
  collect(*root, nodes);
  auto any = [&](const std::function<bool(const Node&)>& pred) {
    return std::any_of(nodes.begin(), nodes.end(), [&](const Node* n) { return pred(*n); });
  };
  if (any([](const Node& n) { return (n.op == "*" || n.op == "/") && n.kids[0]->leaf() && n.kids[1]->leaf(); })) {
    return "R1";
  }
  if (any([](const Node& n) {
        return n.op == "*" && ((n.kids[0]->leaf() && sum_of_leaves(*n.kids[1])) ||
                               (n.kids[1]->leaf() && sum_of_leaves(*n.kids[0])));
      })) {
    return "R2a";
  }
  if (any([](const Node& n) { return n.op == "*" && sum_of_leaves(*n.kids[0]) && sum_of_leaves(*n.kids[1]); })) {
    return "R2b";
  }
  if (any([](const Node& n) { return n.op == "/" && sum_of_leaves(*n.kids[0]) && n.kids[1]->leaf(); })) {
    return "R3";
  }
  if (any([](const Node& n) { return n.op == "sqrt" && n.kids[0]->leaf(); })) return "SQRT-L";
  return std::nullopt;
}

namespace {

// Units of a subtree: nullopt = free (absorbs anything), or a concrete vector;
// `ok` drops to false on a contradiction.
struct Units {
  bool free = false;
  std::vector<lmsr::Rational> v;
};

}  // namespace

std::vector<std::vector<int>> feasible_powers(const lmsr::Gentree& tree, const std::vector<bool>& gated,
                                              const lmsr::UnitsTable& units, bool dimensioned, int delta, int tau) {
  const int m = tree.leaf_count();
  const int n = static_cast<int>(units.variables.size());
  const std::size_t dims = units.dimensions.size();
  const int total = m * n;
  std::vector<int> p(static_cast<std::size_t>(total), -delta);
  std::vector<std::vector<int>> out;
  auto zero = std::vector<lmsr::Rational>(dims, lmsr::Rational(0));
  while (true) {
    bool within = true;
    for (int j = 0; j < m && within; ++j) {
      int s = 0;
      for (int i = 0; i < n; ++i) s += std::abs(p[static_cast<std::size_t>(j * n + i)]);
      within = s <= tau;
    }
    if (within) {
      bool ok = true;
      std::vector<Units> buf(static_cast<std::size_t>(tree.node_count()));
      for (int idx = 0; idx < tree.node_count() && ok; ++idx) {
        const auto& nd = tree.node(idx);
        Units& u = buf[static_cast<std::size_t>(idx)];
        if (nd.is_leaf) {
          if (gated[static_cast<std::size_t>(nd.leaf)] && dimensioned) {
            u.free = true;
            continue;
          }
          u.v = zero;
          for (int i = 0; i < n; ++i) {
            const int e = p[static_cast<std::size_t>(nd.leaf * n + i)];
            for (std::size_t d = 0; d < dims; ++d) u.v[d] += units.variables[static_cast<std::size_t>(i)][d] * lmsr::Rational(e);
          }
          continue;
        }
        const Units& a = buf[static_cast<std::size_t>(nd.lhs)];
        switch (nd.op) {
          case lmsr::Op::Add:
          case lmsr::Op::Sub: {
            const Units& b = buf[static_cast<std::size_t>(nd.rhs)];
            if (a.free) {
              u = b;
            } else if (b.free) {
              u = a;
            } else {
              ok = a.v == b.v;
              u = a;
            }
            break;
          }
          case lmsr::Op::Mul:
          case lmsr::Op::Div: {
            const Units& b = buf[static_cast<std::size_t>(nd.rhs)];
            if (a.free || b.free) {
              u.free = true;
            } else {
              u.v = a.v;
              for (std::size_t d = 0; d < dims; ++d) {
                u.v[d] = nd.op == lmsr::Op::Mul ? a.v[d] + b.v[d] : a.v[d] - b.v[d];
              }
            }
            break;
          }
          case lmsr::Op::Sqrt:
            u = a;
            if (!u.free) {
              for (auto& e : u.v) e /= lmsr::Rational(2);
            }
            break;
          case lmsr::Op::Exp:
            ok = a.free || a.v == zero;
            u.v = zero;
            break;
        }
      }
      const Units& root = buf.back();
      if (ok && (root.free || root.v == units.target.exponents())) out.push_back(p);
    }
    int pos = total - 1;
    while (pos >= 0 && p[static_cast<std::size_t>(pos)] == delta) p[static_cast<std::size_t>(pos--)] = -delta;
    if (pos < 0) break;
    ++p[static_cast<std::size_t>(pos)];
  }
  return out;
}

namespace {

// Model evaluation goes through the library's public sse(); the oracle is
// independent in how it enumerates and fits, not in how it evaluates.
double sse_with(const lmsr::Gentree& tree, const lmsr::Dataset& data, const std::vector<int>& p,
                const std::vector<bool>& gated, const std::vector<double>& h, double eps) {
  const std::size_t n = data.variable_count();
  lmsr::ParamAssignment params;
  for (std::size_t j = 0; j < gated.size(); ++j) {
    params.leaves.push_back({std::vector<int>(p.begin() + static_cast<std::ptrdiff_t>(j * n),
                                              p.begin() + static_cast<std::ptrdiff_t>((j + 1) * n)),
                             gated[j], gated[j] ? h[j] : 1.0});
  }
  return lmsr::sse(tree, params, data, eps);
}

}  // namespace

double best_sse(const lmsr::Gentree& tree, const lmsr::Dataset& data, const lmsr::SolverConfig& cfg, int grid) {
  const int m = tree.leaf_count();
  const int n = static_cast<int>(data.variable_count());
  const int total = m * n;
  const double omega = cfg.omega;
  double best = kInf;
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) > cfg.max_constants) continue;
    if (__builtin_popcount(static_cast<unsigned>(mask)) > 1) throw std::logic_error("oracle fits one constant");
    std::vector<bool> gated(static_cast<std::size_t>(m));
    int slot = -1;
    for (int j = 0; j < m; ++j) {
      gated[static_cast<std::size_t>(j)] = (mask >> j) & 1;
      if (gated[static_cast<std::size_t>(j)]) slot = j;
    }
    std::vector<int> p(static_cast<std::size_t>(total), -cfg.delta);
    while (true) {
      bool within = true;
      for (int j = 0; j < m && within; ++j) {
        int s = 0;
        for (int i = 0; i < n; ++i) s += std::abs(p[static_cast<std::size_t>(j * n + i)]);
        within = s <= cfg.tau;
      }
      if (within) {
        std::vector<double> h(static_cast<std::size_t>(m), 1.0);
        if (slot < 0) {
          best = std::min(best, sse_with(tree, data, p, gated, h, cfg.eps_div));
        } else {
          auto f = [&](double v) {
            h[static_cast<std::size_t>(slot)] = v;
            return sse_with(tree, data, p, gated, h, cfg.eps_div);
          };
          const double step = 2 * omega / (grid - 1);
          std::vector<double> vals(static_cast<std::size_t>(grid));
          for (int g = 0; g < grid; ++g) vals[static_cast<std::size_t>(g)] = f(-omega + g * step);
          for (int g = 0; g < grid; ++g) {
            const double v = vals[static_cast<std::size_t>(g)];
            if (!std::isfinite(v)) continue;
            best = std::min(best, v);
            const double l = g > 0 ? vals[static_cast<std::size_t>(g - 1)] : kInf;
            const double r = g + 1 < grid ? vals[static_cast<std::size_t>(g + 1)] : kInf;
            if (v > l || v > r) continue;
            // Golden-section polish on the neighbouring cells.
            double a = std::max(-omega, -omega + (g - 1) * step);
            double b = std::min(omega, -omega + (g + 1) * step);
            const double k = (std::sqrt(5.0) - 1) / 2;
            double c = b - k * (b - a);
            double d = a + k * (b - a);
            double fc = f(c);
            double fd = f(d);
            for (int it = 0; it < 300 && b - a > 1e-13; ++it) {
              if (fc <= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - k * (b - a);
                fc = f(c);
              } else {
                a = c;
                c = d;
                fc = fd;
                d = a + k * (b - a);
                fd = f(d);
              }
              best = std::min({best, fc, fd});
            }
            // Bisect toward an infeasible cell edge: SSE can keep falling up
            // to the boundary of the domain.
            for (const double edge : {-omega + (g - 1) * step, -omega + (g + 1) * step}) {
              if (edge < -omega || edge > omega || std::isfinite(f(edge))) continue;
              double ok = -omega + g * step;
              double bad = edge;
              while (true) {
                const double mid = ok + (bad - ok) / 2;
                if (mid == ok || mid == bad) break;
                const double fm = f(mid);
                if (std::isfinite(fm)) {
                  ok = mid;
                  best = std::min(best, fm);
                } else {
                  bad = mid;
                }
              }
            }
          }
        }
      }
      int pos = total - 1;
      while (pos >= 0 && p[static_cast<std::size_t>(pos)] == cfg.delta) p[static_cast<std::size_t>(pos--)] = -cfg.delta;
      if (pos < 0) break;
      ++p[static_cast<std::size_t>(pos)];
    }
  }
  return best;
}

namespace {

// Recursive descent over the renderer's grammar:
//   expr := term (("+" | "-") term)*
//   term := factor (("·" | "/") factor)*
//   factor := number | name ["^" int] | ("sqrt" | "exp") "(" expr ")" | "(" expr ")"
struct InfixParser {
  const std::string& s;
  const std::vector<std::string>& names;
  const std::vector<double>& x;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && s[i] == ' ') ++i;
  }
  bool eat(const std::string& tok) {
    skip();
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    while (true) {
      if (eat("+")) {
        v += term();
      } else if (eat("- ")) {
        v -= term();
      } else {
        return v;
      }
    }
  }
  double term() {
    double v = factor();
    while (true) {
      if (eat("·")) {
        v *= factor();
      } else if (eat("/")) {
        v /= factor();
      } else {
        return v;
      }
    }
  }
  double factor() {
    skip();
    if (eat("sqrt(")) {
      const double v = expr();
      if (!eat(")")) throw std::runtime_error("missing )");
      return std::sqrt(v);
    }
    if (eat("exp(")) {
      const double v = expr();
      if (!eat(")")) throw std::runtime_error("missing )");
      return std::exp(v);
    }
    if (eat("(")) {
      const double v = expr();
      if (!eat(")")) throw std::runtime_error("missing )");
      return v;
    }
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
      std::size_t used = 0;
      const double v = std::stod(s.substr(i), &used);
      i += used;
      return v;
    }
    std::size_t j = i;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
    const std::string name = s.substr(i, j - i);
    i = j;
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::runtime_error("unknown name '" + name + "'");
    double v = x[static_cast<std::size_t>(it - names.begin())];
    if (i < s.size() && s[i] == '^') {
      ++i;
      std::size_t used = 0;
      const int e = std::stoi(s.substr(i), &used);
      i += used;
      v = std::pow(v, e);
    }
    return v;
  }
};

}  // namespace

double eval_rendered(const std::string& text, const std::vector<std::string>& names, const std::vector<double>& x) {
  InfixParser p{text, names, x};
  const double v = p.expr();
  p.skip();
  if (p.i != text.size()) throw std::runtime_error("trailing text in '" + text + "'");
  return v;
}

}  // namespace oracle
