#include "lmsr/dimension.hpp"

#include <numeric>
#include <optional>
#include <string>

#include "lmsr/errors.hpp"

namespace lmsr {

namespace {

// Units of a subexpression as an affine function of the flattened powers:
// rows are base dimensions, columns are power unknowns. `free` marks a
// subexpression whose units are unconstrained (it contains a leaf with a
// dimensioned constant in a position that absorbs any unit).
struct AffineUnits {
  bool free = false;
  std::vector<std::vector<Rational>> coeff;
  std::vector<Rational> constant;
};

class ConstraintBuilder {
 public:
  ConstraintBuilder(const Gentree& tree, const std::vector<bool>& gated, const UnitsTable& units, bool dimensioned)
      : tree_(tree), gated_(gated), units_(units), dimensioned_(dimensioned) {
    system_.leaf_count = tree.leaf_count();
    system_.variable_count = static_cast<int>(units.variables.size());
    system_.free_leaves.assign(static_cast<std::size_t>(tree.leaf_count()), false);
  }

  UnitConstraintSystem build() {
    AffineUnits root = visit(tree_.root());
    if (!root.free) {
      AffineUnits target = zero();
      target.constant = units_.target.exponents();
      equate(root, target);
    }
    return std::move(system_);
  }

 private:
  const Gentree& tree_;
  const std::vector<bool>& gated_;
  const UnitsTable& units_;
  bool dimensioned_;
  UnitConstraintSystem system_;

  std::size_t dims() const { return units_.dimensions.size(); }
  std::size_t unknowns() const { return static_cast<std::size_t>(system_.unknowns()); }

  AffineUnits zero() const {
    AffineUnits a;
    a.coeff.assign(dims(), std::vector<Rational>(unknowns(), Rational(0)));
    a.constant.assign(dims(), Rational(0));
    return a;
  }

  static AffineUnits free_units() {
    AffineUnits a;
    a.free = true;
    return a;
  }

  static AffineUnits combine(AffineUnits a, const AffineUnits& b, const Rational& sign) {
    for (std::size_t r = 0; r < a.coeff.size(); ++r) {
      for (std::size_t c = 0; c < a.coeff[r].size(); ++c) a.coeff[r][c] += sign * b.coeff[r][c];
      a.constant[r] += sign * b.constant[r];
    }
    return a;
  }

  void equate(const AffineUnits& a, const AffineUnits& b) {
    for (std::size_t r = 0; r < dims(); ++r) {
      LinearEquation eq;
      eq.coeffs.resize(unknowns());
      bool any = false;
      for (std::size_t c = 0; c < unknowns(); ++c) {
        eq.coeffs[c] = a.coeff[r][c] - b.coeff[r][c];
        any = any || eq.coeffs[c].numerator() != 0;
      }
      eq.rhs = b.constant[r] - a.constant[r];
      if (any || eq.rhs.numerator() != 0) system_.equations.push_back(std::move(eq));
    }
  }

  AffineUnits visit(int index) {
    const auto& n = tree_.node(index);
    if (n.is_leaf) {
      const auto j = static_cast<std::size_t>(n.leaf);
      if (gated_[j] && dimensioned_) {
        system_.free_leaves[j] = true;
        return free_units();
      }
      AffineUnits a = zero();
      const std::size_t nvars = units_.variables.size();
      for (std::size_t i = 0; i < nvars; ++i) {
        for (std::size_t r = 0; r < dims(); ++r) a.coeff[r][j * nvars + i] = units_.variables[i][r];
      }
      return a;
    }
    AffineUnits lhs = visit(n.lhs);
    switch (n.op) {
      case Op::Sqrt:
        if (lhs.free) return lhs;
        for (auto& row : lhs.coeff) {
          for (auto& c : row) c /= 2;
        }
        for (auto& c : lhs.constant) c /= 2;
        return lhs;
      case Op::Exp:
        if (!lhs.free) equate(lhs, zero());
        return zero();
      default:
        break;
    }
    AffineUnits rhs = visit(n.rhs);
    switch (n.op) {
      case Op::Add:
      case Op::Sub:
        if (lhs.free) return rhs;
        if (rhs.free) return lhs;
        equate(lhs, rhs);
        return lhs;
      case Op::Mul:
        if (lhs.free || rhs.free) return free_units();
        return combine(std::move(lhs), rhs, Rational(1));
      case Op::Div:
        if (lhs.free || rhs.free) return free_units();
        return combine(std::move(lhs), rhs, Rational(-1));
      default:
        return lhs;
    }
  }
};

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

}  // namespace

bool UnitConstraintSystem::satisfied_by(std::span<const int> powers) const {
  if (powers.size() != static_cast<std::size_t>(unknowns())) return false;
  for (const auto& eq : equations) {
    Rational lhs(0);
    for (std::size_t c = 0; c < eq.coeffs.size(); ++c) {
      if (eq.coeffs[c].numerator() != 0) lhs += eq.coeffs[c] * Rational(powers[c]);
    }
    if (lhs != eq.rhs) return false;
  }
  return true;
}

UnitConstraintSystem tree_unit_constraints(const Gentree& tree, const std::vector<bool>& gated,
                                           const UnitsTable& units, bool dimensioned_constants) {
  if (gated.size() != static_cast<std::size_t>(tree.leaf_count())) {
    throw ConfigError("gate pattern length does not match the tree's leaf count");
  }
  units.validate(units.variables.size());
  if (units.variables.empty()) throw ConfigError("units table lists no variables");
  return ConstraintBuilder(tree, gated, units, dimensioned_constants).build();
}

UnitConstraintSystem unconstrained_system(int leaf_count, int variable_count) {
  UnitConstraintSystem s;
  s.leaf_count = leaf_count;
  s.variable_count = variable_count;
  s.free_leaves.assign(static_cast<std::size_t>(leaf_count), false);
  return s;
}

FeasiblePowerEnumerator::FeasiblePowerEnumerator(const UnitConstraintSystem& system, int delta, int tau)
    : unknowns_(system.unknowns()), per_leaf_(system.variable_count), delta_(delta), tau_(tau) {
  if (delta < 0 || tau < 0) throw ConfigError("power bounds must be non-negative");
  if (unknowns_ <= 0) throw ConfigError("power system has no unknowns");

  // Reduced row echelon form with columns processed right to left.
  std::vector<LinearEquation> rows = system.equations;
  const int cols = unknowns_;
  std::vector<int> pivot_col_of_row;
  std::size_t next_row = 0;
  for (int c = cols - 1; c >= 0 && next_row < rows.size(); --c) {
    std::size_t pivot = next_row;
    while (pivot < rows.size() && rows[pivot].coeffs[static_cast<std::size_t>(c)].numerator() == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[next_row]);
    auto& pr = rows[next_row];
    const Rational scale = pr.coeffs[static_cast<std::size_t>(c)];
    for (auto& v : pr.coeffs) v /= scale;
    pr.rhs /= scale;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next_row) continue;
      const Rational f = rows[r].coeffs[static_cast<std::size_t>(c)];
      if (f.numerator() == 0) continue;
      for (std::size_t k = 0; k < rows[r].coeffs.size(); ++k) rows[r].coeffs[k] -= f * pr.coeffs[k];
      rows[r].rhs -= f * pr.rhs;
    }
    pivot_col_of_row.push_back(c);
    ++next_row;
  }
  for (std::size_t r = next_row; r < rows.size(); ++r) {
    if (rows[r].rhs.numerator() != 0) inconsistent_ = true;
  }

  dependent_of_.assign(static_cast<std::size_t>(cols), -1);
  for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) {
    const int pc = pivot_col_of_row[r];
    const auto& row = rows[r];
    std::int64_t l = row.rhs.denominator();
    for (int c = 0; c < cols; ++c) {
      if (c != pc && row.coeffs[static_cast<std::size_t>(c)].numerator() != 0) {
        l = lcm64(l, row.coeffs[static_cast<std::size_t>(c)].denominator());
      }
    }
    Dependent dep;
    dep.pivot_coeff = l;
    dep.rhs = (row.rhs * l).numerator();
    for (int c = 0; c < cols; ++c) {
      const Rational& v = row.coeffs[static_cast<std::size_t>(c)];
      if (c == pc || v.numerator() == 0) continue;
      dep.terms.emplace_back(c, (v * l).numerator());
    }
    dependent_of_[static_cast<std::size_t>(pc)] = static_cast<int>(dependents_.size());
    dependents_.push_back(std::move(dep));
  }
  leaf_partial_.assign(static_cast<std::size_t>(cols), 0);
  reset();
}

void FeasiblePowerEnumerator::reset() {
  cursor_ = Cursor{};
  cursor_.values.assign(static_cast<std::size_t>(unknowns_), 0);
  cursor_.done = inconsistent_;
}

void FeasiblePowerEnumerator::restore(const Cursor& cursor) {
  if (cursor.values.size() != static_cast<std::size_t>(unknowns_)) {
    throw ConfigError("enumerator cursor does not match the power system");
  }
  cursor_ = cursor;
  for (int pos = 0; pos < unknowns_; ++pos) {
    const int v = cursor_.values[static_cast<std::size_t>(pos)];
    const int prev = (pos % per_leaf_ == 0) ? 0 : leaf_partial_[static_cast<std::size_t>(pos) - 1];
    leaf_partial_[static_cast<std::size_t>(pos)] = prev + (v < 0 ? -v : v);
  }
}

bool FeasiblePowerEnumerator::assign(int position, int value) {
  if (value < -delta_ || value > delta_) return false;
  const auto p = static_cast<std::size_t>(position);
  const int prev = (position % per_leaf_ == 0) ? 0 : leaf_partial_[p - 1];
  const int partial = prev + (value < 0 ? -value : value);
  if (partial > tau_) return false;
  cursor_.values[p] = value;
  leaf_partial_[p] = partial;
  return true;
}

bool FeasiblePowerEnumerator::dependent_value(int position, int& value) const {
  const Dependent& dep = dependents_[static_cast<std::size_t>(dependent_of_[static_cast<std::size_t>(position)])];
  std::int64_t num = dep.rhs;
  for (const auto& [col, coeff] : dep.terms) num -= coeff * cursor_.values[static_cast<std::size_t>(col)];
  if (num % dep.pivot_coeff != 0) return false;
  const std::int64_t v = num / dep.pivot_coeff;
  if (v < -delta_ || v > delta_) return false;
  value = static_cast<int>(v);
  return true;
}

bool FeasiblePowerEnumerator::next(std::vector<int>& out) {
  Cursor& c = cursor_;
  if (c.done) return false;
  if (!c.started) {
    c.started = true;
    c.level = 0;
    c.descending = true;
  }
  while (true) {
    if (c.level < 0) {
      c.done = true;
      return false;
    }
    if (c.level == unknowns_) {
      out = c.values;
      c.level = unknowns_ - 1;
      c.descending = false;
      return true;
    }
    const int pos = c.level;
    const bool dependent = dependent_of_[static_cast<std::size_t>(pos)] >= 0;
    bool advanced = false;
    if (dependent) {
      int v = 0;
      advanced = c.descending && dependent_value(pos, v) && assign(pos, v);
    } else {
      const int start = c.descending ? -delta_ : c.values[static_cast<std::size_t>(pos)] + 1;
      for (int v = start; v <= delta_ && !advanced; ++v) advanced = assign(pos, v);
    }
    if (advanced) {
      ++c.level;
      c.descending = true;
    } else {
      --c.level;
      c.descending = false;
    }
  }
}

std::vector<std::vector<int>> feasible_power_sets(const UnitConstraintSystem& system, int delta, int tau) {
  FeasiblePowerEnumerator e(system, delta, tau);
  std::vector<std::vector<int>> out;
  std::vector<int> p;
  while (e.next(p)) out.push_back(p);
  return out;
}

bool check_model_units(const CandidateModel& model, const UnitsTable& units, bool dimensioned_constants) {
  const auto& leaves = model.params.leaves;
  if (leaves.size() != static_cast<std::size_t>(model.tree.leaf_count())) return false;
  std::vector<bool> gated(leaves.size());
  std::vector<int> powers;
  for (std::size_t j = 0; j < leaves.size(); ++j) {
    gated[j] = leaves[j].gated;
    if (leaves[j].powers.size() != units.variables.size()) return false;
    powers.insert(powers.end(), leaves[j].powers.begin(), leaves[j].powers.end());
  }
  const auto system = tree_unit_constraints(model.tree, gated, units, dimensioned_constants);
  return system.satisfied_by(powers);
}

}  // namespace lmsr
