#pragma once

#include <span>
#include <vector>

namespace lmsr {

/// One leaf: h * x1^a1 * ... * xn^an with integer exponents.
/// When `gated` is false the constant is fixed at exactly 1.
struct LMonomial {
  std::vector<int> powers;
  bool gated = false;
  double constant = 1.0;

  friend bool operator==(const LMonomial&, const LMonomial&) = default;
};

/// x^e by repeated squaring. Throws DomainError(zero_to_negative_power) for
/// 0^e with e < 0 and DomainError(overflow) on a non-finite result.
double integer_power(double x, int e);

/// h * prod x[i]^powers[i]. Throws DomainError as integer_power does.
double eval_lmonomial(const LMonomial& leaf, std::span<const double> x);

/// Sum of |powers[i]|.
int power_norm(std::span<const int> powers);

}  // namespace lmsr
