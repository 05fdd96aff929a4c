#pragma once

#include <optional>

#include "lmsr/dataset.hpp"
#include "lmsr/model.hpp"

namespace lmsr {

/// Whether two models express the same law. Models built from +, -, * and /
/// are compared symbolically as ratios of Laurent polynomials, with
/// coefficients matched to `rel_tol` of the largest coefficient. Models that
/// use sqrt or exp are compared numerically on the points of `probe`.
bool same_functional_form(const CandidateModel& a, const CandidateModel& b, const Dataset& probe,
                          double rel_tol = 1e-5);

/// The symbolic comparison alone; nullopt when either model uses sqrt or exp.
std::optional<bool> same_rational_form(const CandidateModel& a, const CandidateModel& b, double rel_tol = 1e-5);

/// Same gentree, same gates and same powers on every leaf; constants may differ.
bool same_power_pattern(const CandidateModel& a, const CandidateModel& b);

}  // namespace lmsr
