#pragma once

#include <span>
#include <vector>

#include "lmsr/config.hpp"
#include "lmsr/dataset.hpp"
#include "lmsr/gentree.hpp"
#include "lmsr/interval.hpp"

namespace lmsr {

struct ConstantFit {
  std::vector<double> constants;  // one per leaf; 1.0 for ungated leaves
  double sse = 0.0;               // +inf when no feasible constant was found
  std::size_t evaluations = 0;    // full passes over the data
};

/// True when every gated leaf reaches the root through ADD/SUB nodes, MUL
/// nodes whose other operand holds no gated leaf, and DIV numerators whose
/// denominator holds no gated leaf. The model is then affine in the gated
/// constants.
bool constants_enter_linearly(const Gentree& tree, const std::vector<bool>& gated);

/// Monomial values without constants for every point, stored point-major:
/// values[i * m + j] is leaf j at point i.
class LeafTable {
 public:
  LeafTable(const Dataset& data, int leaf_count);

  /// Recomputes the table for `powers` (leaf-major, m * n entries). Returns
  /// false when some monomial is undefined at some point.
  bool assign(std::span<const int> powers);

  std::span<const double> point(std::size_t i) const {
    return {values_.data() + i * static_cast<std::size_t>(leaves_), static_cast<std::size_t>(leaves_)};
  }
  int leaf_count() const noexcept { return leaves_; }
  std::size_t points() const noexcept { return data_.size(); }

 private:
  const Dataset& data_;
  int leaves_;
  std::vector<double> values_;
};

/// Fits the gated constants of one tree for one power assignment.
class ConstantFitter {
 public:
  ConstantFitter(const Gentree& tree, const Dataset& data, const SolverConfig& cfg);

  /// SSE for explicit constants (entries of ungated leaves are ignored).
  double sse_at(const LeafTable& table, const std::vector<bool>& gated, std::span<const double> constants) const;

  /// Minimizes SSE over gated constants in [-omega, omega].
  ConstantFit fit(const LeafTable& table, const std::vector<bool>& gated) const;

  /// Interval lower bound on the SSE over the whole constant box.
  double interval_bound(const LeafTable& table, const std::vector<bool>& gated) const;

 private:
  const Gentree& tree_;
  const Dataset& data_;
  const SolverConfig& cfg_;

  /// Least squares over `slots`; other gated leaves take their constants
  /// from `fixed` (zero when empty).
  ConstantFit fit_linear(const LeafTable& table, const std::vector<bool>& gated, const std::vector<int>& slots,
                         std::span<const double> fixed) const;
  ConstantFit fit_grid(const LeafTable& table, const std::vector<bool>& gated, const std::vector<int>& slots) const;
};

/// One-shot wrapper: builds the leaf table for `powers` (one vector per
/// leaf) and fits the gated constants.
ConstantFit fit_constants(const Gentree& tree, std::span<const std::vector<int>> powers,
                          const std::vector<bool>& gated, const Dataset& data, const SolverConfig& cfg);

/// Minimizes a 1-D function on [lo, hi] by golden-section search until the
/// bracket is narrower than `tol`. Returns the abscissa of the best value seen.
double golden_section(const auto& f, double lo, double hi, double tol, double& best_value) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  double best_x = fc <= fd ? c : d;
  best_value = fc <= fd ? fc : fd;
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      if (fc < best_value) {
        best_value = fc;
        best_x = c;
      }
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      if (fd < best_value) {
        best_value = fd;
        best_x = d;
      }
    }
  }
  return best_x;
}

}  // namespace lmsr
