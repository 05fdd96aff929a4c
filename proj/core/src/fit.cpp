#include "lmsr/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "lmsr/errors.hpp"
#include "lmsr/eval.hpp"

namespace lmsr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRefineTol = 1e-12;

std::vector<bool> subtree_has_gated(const Gentree& tree, const std::vector<bool>& gated) {
  std::vector<bool> has(static_cast<std::size_t>(tree.node_count()), false);
  for (int i = 0; i < tree.node_count(); ++i) {
    const auto& n = tree.node(i);
    if (n.is_leaf) {
      has[static_cast<std::size_t>(i)] = gated[static_cast<std::size_t>(n.leaf)];
    } else {
      has[static_cast<std::size_t>(i)] =
          has[static_cast<std::size_t>(n.lhs)] || (n.rhs >= 0 && has[static_cast<std::size_t>(n.rhs)]);
    }
  }
  return has;
}

// Largest subset of `slots` whose constants are jointly affine in the model
// when every other gated constant is held fixed; earliest slots win ties.
std::vector<int> linear_subset(const Gentree& tree, const std::vector<bool>& gated, const std::vector<int>& slots) {
  const std::size_t k = slots.size();
  std::vector<int> best;
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> pick;
    std::vector<bool> only(gated.size(), false);
    for (std::size_t s = 0; s < k; ++s) {
      if ((mask >> s) & 1U) {
        pick.push_back(slots[s]);
        only[static_cast<std::size_t>(slots[s])] = true;
      }
    }
    if (pick.size() <= best.size() || pick.size() == k) continue;
    if (constants_enter_linearly(tree, only)) best = std::move(pick);
  }
  return best;
}

std::vector<int> gated_slots(const std::vector<bool>& gated) {
  std::vector<int> slots;
  for (std::size_t j = 0; j < gated.size(); ++j) {
    if (gated[j]) slots.push_back(static_cast<int>(j));
  }
  return slots;
}

}  // namespace

bool constants_enter_linearly(const Gentree& tree, const std::vector<bool>& gated) {
  const auto has = subtree_has_gated(tree, gated);
  for (int i = 0; i < tree.node_count(); ++i) {
    const auto& n = tree.node(i);
    if (n.is_leaf) continue;
    const bool l = has[static_cast<std::size_t>(n.lhs)];
    const bool r = n.rhs >= 0 && has[static_cast<std::size_t>(n.rhs)];
    switch (n.op) {
      case Op::Add:
      case Op::Sub:
        break;
      case Op::Mul:
        if (l && r) return false;
        break;
      case Op::Div:
        if (r) return false;
        break;
      case Op::Sqrt:
      case Op::Exp:
        if (l) return false;
        break;
    }
  }
  return true;
}

LeafTable::LeafTable(const Dataset& data, int leaf_count)
    : data_(data), leaves_(leaf_count), values_(data.size() * static_cast<std::size_t>(leaf_count), 1.0) {}

bool LeafTable::assign(std::span<const int> powers) {
  const std::size_t n = data_.variable_count();
  const auto m = static_cast<std::size_t>(leaves_);
  if (powers.size() != n * m) throw ConfigError("power vector does not match the leaf table");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const auto x = data_.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      double v = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        const int p = powers[j * n + k];
        if (p == 0) continue;
        if (x[k] == 0.0 && p < 0) return false;
        v *= integer_power(x[k], p);
      }
      if (!std::isfinite(v)) return false;
      values_[i * m + j] = v;
    }
  }
  return true;
}

ConstantFitter::ConstantFitter(const Gentree& tree, const Dataset& data, const SolverConfig& cfg)
    : tree_(tree), data_(data), cfg_(cfg) {}

double ConstantFitter::sse_at(const LeafTable& table, const std::vector<bool>& gated,
                              std::span<const double> constants) const {
  const auto m = static_cast<std::size_t>(table.leaf_count());
  std::array<double, kMaxTreeNodes> leaves;
  double total = 0.0;
  const auto& y = data_.targets();
  for (std::size_t i = 0; i < table.points(); ++i) {
    const auto base = table.point(i);
    for (std::size_t j = 0; j < m; ++j) leaves[j] = gated[j] ? base[j] * constants[j] : base[j];
    const EvalOutcome out = evaluate_with_leaf_values(tree_, {leaves.data(), m}, cfg_.eps_div);
    if (out.error) return kInf;
    const double r = y[i] - out.value;
    total += r * r;
  }
  return std::isfinite(total) ? total : kInf;
}

ConstantFit ConstantFitter::fit(const LeafTable& table, const std::vector<bool>& gated) const {
  const auto slots = gated_slots(gated);
  if (slots.empty()) {
    std::vector<double> ones(gated.size(), 1.0);
    const double s = sse_at(table, gated, ones);
    return {std::move(ones), s, 1};
  }
  if (constants_enter_linearly(tree_, gated)) return fit_linear(table, gated, slots, {});
  return fit_grid(table, gated, slots);
}

ConstantFit ConstantFitter::fit_linear(const LeafTable& table, const std::vector<bool>& gated,
                                       const std::vector<int>& slots, std::span<const double> fixed) const {
  const std::size_t npts = table.points();
  const std::size_t k = slots.size();
  const auto m = static_cast<std::size_t>(table.leaf_count());
  const double omega = cfg_.omega;

  // The model is f0 + G h; recover f0 and the columns of G by evaluating at
  // h = 0 and at each unit vector.
  Eigen::VectorXd resid(static_cast<Eigen::Index>(npts));
  Eigen::MatrixXd g(static_cast<Eigen::Index>(npts), static_cast<Eigen::Index>(k));
  std::array<double, kMaxTreeNodes> leaves;
  for (std::size_t i = 0; i < npts; ++i) {
    const auto base = table.point(i);
    auto eval_with = [&](int unit_slot) -> EvalOutcome {
      for (std::size_t j = 0; j < m; ++j) leaves[j] = gated[j] ? (fixed.empty() ? 0.0 : base[j] * fixed[j]) : base[j];
      for (int slot : slots) leaves[static_cast<std::size_t>(slot)] = 0.0;
      if (unit_slot >= 0) leaves[static_cast<std::size_t>(unit_slot)] = base[static_cast<std::size_t>(unit_slot)];
      return evaluate_with_leaf_values(tree_, {leaves.data(), m}, cfg_.eps_div);
    };
    const EvalOutcome f0 = eval_with(-1);
    if (f0.error) return {std::vector<double>(gated.size(), 1.0), kInf, k + 1};
    resid(static_cast<Eigen::Index>(i)) = data_.targets()[i] - f0.value;
    for (std::size_t s = 0; s < k; ++s) {
      const EvalOutcome fs = eval_with(slots[s]);
      if (fs.error) return {std::vector<double>(gated.size(), 1.0), kInf, k + 1};
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)) = fs.value - f0.value;
    }
  }

  // Box-constrained least squares by enumerating which constants sit on a
  // bound (3^k cases, k <= 3); the problem is convex so the best feasible
  // case is the optimum.
  std::vector<double> best_h(k, 0.0);
  double best = kInf;
  std::size_t cases = 1;
  for (std::size_t s = 0; s < k; ++s) cases *= 3;
  std::vector<double> h(k);
  for (std::size_t code = 0; code < cases; ++code) {
    std::vector<Eigen::Index> free_cols;
    Eigen::VectorXd r = resid;
    std::size_t c = code;
    for (std::size_t s = 0; s < k; ++s, c /= 3) {
      const auto state = c % 3;
      if (state == 0) {
        free_cols.push_back(static_cast<Eigen::Index>(s));
      } else {
        h[s] = state == 1 ? -omega : omega;
        r -= g.col(static_cast<Eigen::Index>(s)) * h[s];
      }
    }
    if (!free_cols.empty()) {
      Eigen::MatrixXd gf(g.rows(), static_cast<Eigen::Index>(free_cols.size()));
      for (std::size_t q = 0; q < free_cols.size(); ++q) gf.col(static_cast<Eigen::Index>(q)) = g.col(free_cols[q]);
      const Eigen::VectorXd sol = gf.colPivHouseholderQr().solve(r);
      bool inside = true;
      for (std::size_t q = 0; q < free_cols.size(); ++q) {
        const double v = sol(static_cast<Eigen::Index>(q));
        if (!std::isfinite(v) || std::fabs(v) > omega) inside = false;
        h[static_cast<std::size_t>(free_cols[q])] = v;
      }
      if (!inside) continue;
      r -= gf * sol;
    }
    const double obj = r.squaredNorm();
    if (obj < best) {
      best = obj;
      best_h = h;
    }
  }

  std::vector<double> constants(gated.size(), 1.0);
  if (!fixed.empty()) constants.assign(fixed.begin(), fixed.end());
  for (std::size_t s = 0; s < k; ++s) constants[static_cast<std::size_t>(slots[s])] = best_h[s];
  const double s = sse_at(table, gated, constants);
  return {std::move(constants), s, k + 2};
}

ConstantFit ConstantFitter::fit_grid(const LeafTable& table, const std::vector<bool>& gated,
                                     const std::vector<int>& slots) const {
  // Constants that enter linearly once the others are fixed are solved
  // exactly at every point, so the grid only spans the remaining ones.
  const std::vector<int> linear = linear_subset(tree_, gated, slots);
  std::vector<int> nonlinear;
  for (int slot : slots) {
    if (std::find(linear.begin(), linear.end(), slot) == linear.end()) nonlinear.push_back(slot);
  }
  const std::size_t k = nonlinear.size();
  const double omega = cfg_.omega;
  std::vector<double> constants(gated.size(), 1.0);
  std::size_t evaluations = 0;
  auto objective = [&](std::span<const double> h) {
    for (std::size_t s = 0; s < k; ++s) constants[static_cast<std::size_t>(nonlinear[s])] = h[s];
    if (linear.empty()) {
      ++evaluations;
      return sse_at(table, gated, constants);
    }
    const ConstantFit inner = fit_linear(table, gated, linear, constants);
    evaluations += inner.evaluations;
    return inner.sse;
  };

  const int g = k == 1 ? cfg_.grid_points : cfg_.grid_points_multi;
  const double step = 2.0 * omega / (g - 1);
  auto grid_value = [&](int idx) { return idx == g - 1 ? omega : -omega + idx * step; };

  // Grid scan. For one constant keep the local minima; for several keep the
  // best grid points.
  struct Start {
    double value;
    std::vector<double> h;
  };
  std::vector<Start> starts;
  if (k == 1) {
    std::vector<double> vals(static_cast<std::size_t>(g));
    for (int idx = 0; idx < g; ++idx) {
      const double h0 = grid_value(idx);
      vals[static_cast<std::size_t>(idx)] = objective(std::span<const double>(&h0, 1));
    }
    for (int idx = 0; idx < g; ++idx) {
      const double v = vals[static_cast<std::size_t>(idx)];
      if (!std::isfinite(v)) continue;
      const double left = idx > 0 ? vals[static_cast<std::size_t>(idx) - 1] : kInf;
      const double right = idx + 1 < g ? vals[static_cast<std::size_t>(idx) + 1] : kInf;
      if (v <= left && v <= right) starts.push_back({v, {grid_value(idx)}});
    }
  } else {
    std::vector<int> idx(k, 0);
    std::vector<double> h(k);
    while (true) {
      for (std::size_t s = 0; s < k; ++s) h[s] = grid_value(idx[s]);
      const double v = objective(h);
      if (std::isfinite(v)) starts.push_back({v, h});
      std::size_t s = 0;
      while (s < k && ++idx[s] == g) idx[s++] = 0;
      if (s == k) break;
    }
  }
  if (starts.empty()) return {std::vector<double>(gated.size(), 1.0), kInf, evaluations};
  const auto keep = std::min(starts.size(), static_cast<std::size_t>(cfg_.multistart));
  std::partial_sort(starts.begin(), starts.begin() + static_cast<std::ptrdiff_t>(keep), starts.end(),
                    [](const Start& a, const Start& b) { return a.value < b.value; });
  starts.resize(keep);

  // Local refinement: golden section on the bracket around each start, one
  // coordinate at a time, halving the bracket each sweep.
  double best = kInf;
  std::vector<double> best_h;
  for (auto& st : starts) {
    std::vector<double> h = st.h;
    double value = st.value;
    double radius = step;
    for (int sweep = 0; sweep < 200 && radius > kRefineTol; ++sweep) {
      for (std::size_t s = 0; s < k; ++s) {
        const double lo = std::max(-omega, h[s] - radius);
        const double hi = std::min(omega, h[s] + radius);
        double v = kInf;
        std::vector<double> trial = h;
        const double x = golden_section(
            [&](double t) {
              trial[s] = t;
              return objective(trial);
            },
            lo, hi, kRefineTol, v);
        if (v < value) {
          value = v;
          h[s] = x;
        }
        // Minima often sit on a domain edge (a sqrt argument reaching zero)
        // where the slope is unbounded; walk the edge down to adjacent doubles.
        for (const double end : {lo, hi}) {
          trial = h;
          trial[s] = end;
          if (std::isfinite(objective(trial))) continue;
          double in = h[s];
          double out = end;
          for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (in + out);
            if (mid == in || mid == out) break;
            trial[s] = mid;
            const double fm = objective(trial);
            if (std::isfinite(fm)) {
              in = mid;
              if (fm < value) {
                value = fm;
                h[s] = mid;
              }
            } else {
              out = mid;
            }
          }
        }
      }
      if (k == 1) break;
      radius *= 0.5;
    }
    if (value < best) {
      best = value;
      best_h = h;
    }
  }

  std::fill(constants.begin(), constants.end(), 1.0);
  for (std::size_t s = 0; s < k; ++s) constants[static_cast<std::size_t>(nonlinear[s])] = best_h[s];
  if (!linear.empty()) {
    ConstantFit inner = fit_linear(table, gated, linear, constants);
    inner.evaluations += evaluations;
    return inner;
  }
  const double s = sse_at(table, gated, constants);
  return {constants, s, evaluations + 1};
}

double ConstantFitter::interval_bound(const LeafTable& table, const std::vector<bool>& gated) const {
  const auto m = static_cast<std::size_t>(table.leaf_count());
  const Interval box{-cfg_.omega, cfg_.omega, false};
  std::array<Interval, kMaxTreeNodes> buf;
  double total = 0.0;
  const auto nodes = tree_.nodes();
  for (std::size_t i = 0; i < table.points(); ++i) {
    const auto base = table.point(i);
    for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
      const auto& n = nodes[idx];
      if (n.is_leaf) {
        const auto j = static_cast<std::size_t>(n.leaf);
        buf[idx] = gated[j] ? box * Interval::point(base[j]) : Interval::point(base[j]);
        continue;
      }
      const Interval& a = buf[static_cast<std::size_t>(n.lhs)];
      switch (n.op) {
        case Op::Add: buf[idx] = a + buf[static_cast<std::size_t>(n.rhs)]; break;
        case Op::Sub: buf[idx] = a - buf[static_cast<std::size_t>(n.rhs)]; break;
        case Op::Mul: buf[idx] = a * buf[static_cast<std::size_t>(n.rhs)]; break;
        case Op::Div: buf[idx] = divide(a, buf[static_cast<std::size_t>(n.rhs)], cfg_.eps_div); break;
        case Op::Sqrt: buf[idx] = sqrt(a); break;
        case Op::Exp: buf[idx] = exp(a); break;
      }
    }
    total += min_square_residual(data_.targets()[i], buf[nodes.size() - 1]);
  }
  (void)m;
  return total;
}

ConstantFit fit_constants(const Gentree& tree, std::span<const std::vector<int>> powers,
                          const std::vector<bool>& gated, const Dataset& data, const SolverConfig& cfg) {
  const auto m = static_cast<std::size_t>(tree.leaf_count());
  if (powers.size() != m || gated.size() != m) throw ConfigError("powers and gates must have one entry per leaf");
  if (static_cast<int>(std::count(gated.begin(), gated.end(), true)) > cfg.max_constants) {
    throw ConfigError("more gated leaves than the constant budget allows");
  }
  std::vector<int> flat;
  for (const auto& p : powers) {
    if (p.size() != data.variable_count()) throw ConfigError("power vector length does not match the dataset");
    flat.insert(flat.end(), p.begin(), p.end());
  }
  LeafTable table(data, tree.leaf_count());
  if (!table.assign(flat)) return {std::vector<double>(m, 1.0), kInf, 0};
  return ConstantFitter(tree, data, cfg).fit(table, gated);
}

}  // namespace lmsr
