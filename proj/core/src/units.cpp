#include "lmsr/units.hpp"

#include <charconv>
#include <string>

#include "lmsr/errors.hpp"

namespace lmsr {

namespace {

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw ParseError("invalid rational '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw ParseError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
    return Rational(parse_int(text.substr(0, slash), whole), den);
  }

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) throw ParseError("invalid rational '" + std::string(whole) + "'");
  if (frac_part.size() > 15) throw ParseError("too many decimals in '" + std::string(whole) + "'");

  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
  const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, whole);
  const std::int64_t fp = frac_part.empty() ? 0 : parse_int(frac_part, whole);
  Rational r(ip * scale + fp, scale);
  return negative ? -r : r;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

UnitVector::UnitVector(std::initializer_list<std::int64_t> exps) {
  exps_.reserve(exps.size());
  for (auto e : exps) exps_.emplace_back(e);
}

bool UnitVector::dimensionless() const {
  for (const auto& e : exps_) {
    if (e.numerator() != 0) return false;
  }
  return true;
}

UnitVector& UnitVector::operator+=(const UnitVector& o) {
  for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] += o.exps_[i];
  return *this;
}

UnitVector& UnitVector::operator-=(const UnitVector& o) {
  for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] -= o.exps_[i];
  return *this;
}

UnitVector& UnitVector::operator*=(const Rational& s) {
  for (auto& e : exps_) e *= s;
  return *this;
}

void UnitsTable::validate(std::size_t variable_count) const {
  if (variables.size() != variable_count) {
    throw ConfigError("units table has " + std::to_string(variables.size()) + " variable rows, expected " +
                      std::to_string(variable_count));
  }
  const std::size_t dims = dimensions.size();
  if (target.size() != dims) throw ConfigError("target units have the wrong number of dimensions");
  for (const auto& u : variables) {
    if (u.size() != dims) throw ConfigError("variable units have the wrong number of dimensions");
  }
}

}  // namespace lmsr
