#include "lmsr/errors.hpp"

namespace lmsr {

std::string_view to_string(DomainErrorKind kind) {
  switch (kind) {
    case DomainErrorKind::sqrt_negative:
      return "sqrt_negative";
    case DomainErrorKind::div_by_zero:
      return "div_by_zero";
    case DomainErrorKind::overflow:
      return "overflow";
    case DomainErrorKind::zero_to_negative_power:
      return "zero_to_negative_power";
  }
  return "unknown";
}

DomainError::DomainError(DomainErrorKind kind)
    : Error("domain error: " + std::string(to_string(kind))), kind_(kind) {}

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

ShapeError::ShapeError(const std::string& what, std::size_t line)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

UnknownLabel::UnknownLabel(const std::string& label) : Error("unknown problem label '" + label + "'") {}

}  // namespace lmsr
