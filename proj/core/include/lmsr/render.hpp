#pragma once

#include <span>
#include <string>

#include "lmsr/gentree.hpp"
#include "lmsr/model.hpp"

namespace lmsr {

/// Shortest decimal text that reads back to exactly `value`.
std::string format_constant(double value);

/// Infix rendering with explicit powers, e.g. "0.25·m·x^2·(w^2 + w0^2)".
/// Factors are joined by U+00B7; an unconstrained empty leaf renders as "1".
std::string render(const Gentree& tree, const ParamAssignment& params, std::span<const std::string> names);

std::string render(const CandidateModel& model, std::span<const std::string> names);

}  // namespace lmsr
