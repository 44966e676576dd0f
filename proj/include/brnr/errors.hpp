#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brnr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (presentation files, multivector expressions).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : ParseError(0, what) {}

  /// 1-based line number, 0 when the input is not line oriented.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value outside the domain an operation accepts (non-prime modulus,
/// t = 0, reducible quadratic, non-surjective commutator map, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operands whose dimensions, degrees, fields or sides do not match.
class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An enumeration would exceed its explicit work budget and was refused.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A post-condition the pipeline asserts on its own output failed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace brnr
