#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lmsr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DomainErrorKind {
  sqrt_negative,
  div_by_zero,
  overflow,
  zero_to_negative_power,
};

std::string_view to_string(DomainErrorKind kind);

/// A candidate expression is undefined at a data point.
class DomainError : public Error {
 public:
  explicit DomainError(DomainErrorKind kind);
  DomainErrorKind kind() const noexcept { return kind_; }

 private:
  DomainErrorKind kind_;
};

/// Invalid configuration: empty operator sets, bad bounds, incomplete units.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line()` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ShapeError : public Error {
 public:
  ShapeError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValueError : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& label);
};

}  // namespace lmsr
