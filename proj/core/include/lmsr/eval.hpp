#pragma once

#include <optional>
#include <span>

#include "lmsr/dataset.hpp"
#include "lmsr/errors.hpp"
#include "lmsr/gentree.hpp"
#include "lmsr/model.hpp"

namespace lmsr {

/// Divisions whose denominator magnitude falls below this are infeasible.
inline constexpr double kDefaultEpsDiv = 1e-30;

struct EvalOutcome {
  double value = 0.0;
  std::optional<DomainErrorKind> error;

  bool ok() const noexcept { return !error; }
};

/// Evaluates `tree` given the final value of every leaf slot (constant
/// already applied). Non-throwing; this is the hot path used by the solver.
EvalOutcome evaluate_with_leaf_values(const Gentree& tree, std::span<const double> leaf_values,
                                      double eps_div = kDefaultEpsDiv) noexcept;

/// Bottom-up evaluation. Throws DomainError.
double eval_gentree(const Gentree& tree, const ParamAssignment& params, std::span<const double> x,
                    double eps_div = kDefaultEpsDiv);

/// Sum of squared residuals over the dataset, or +infinity when the model is
/// undefined at any point.
double sse(const Gentree& tree, const ParamAssignment& params, const Dataset& data,
           double eps_div = kDefaultEpsDiv);

}  // namespace lmsr
