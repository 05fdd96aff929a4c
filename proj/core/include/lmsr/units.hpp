#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace lmsr {

using Rational = boost::rational<std::int64_t>;

/// Parses "2", "-0.5", "1.25" or "3/2" exactly. Throws ParseError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// Exponents of the base physical dimensions (e.g. m, s, kg, T, V).
class UnitVector {
 public:
  UnitVector() = default;
  explicit UnitVector(std::size_t dimensions) : exps_(dimensions, Rational(0)) {}
  explicit UnitVector(std::vector<Rational> exps) : exps_(std::move(exps)) {}
  UnitVector(std::initializer_list<std::int64_t> exps);

  std::size_t size() const noexcept { return exps_.size(); }
  const Rational& operator[](std::size_t i) const { return exps_[i]; }
  Rational& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<Rational>& exponents() const noexcept { return exps_; }

  bool dimensionless() const;

  UnitVector& operator+=(const UnitVector& o);
  UnitVector& operator-=(const UnitVector& o);
  UnitVector& operator*=(const Rational& s);
  friend UnitVector operator+(UnitVector a, const UnitVector& b) { return a += b; }
  friend UnitVector operator-(UnitVector a, const UnitVector& b) { return a -= b; }
  friend UnitVector operator*(UnitVector a, const Rational& s) { return a *= s; }
  friend bool operator==(const UnitVector&, const UnitVector&) = default;

 private:
  std::vector<Rational> exps_;
};

/// Units for each independent variable (aligned with the dataset's variable
/// order) plus the dependent variable.
struct UnitsTable {
  std::vector<std::string> dimensions;
  std::vector<UnitVector> variables;
  UnitVector target;

  /// Throws ConfigError unless every vector has `dimensions.size()` entries
  /// and there are exactly `variable_count` variable rows.
  void validate(std::size_t variable_count) const;
};

}  // namespace lmsr
