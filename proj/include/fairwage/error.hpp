#pragma once

#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairwage {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a structural precondition (sizes, option ranges).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a record invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::size_t line, std::string field, const std::string& what)
      : Error("line " + std::to_string(line) + ": field '" + field + "': " + what),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// Too few observations for a fit.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver stopped without meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + format_residual(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  static std::string format_residual(double r) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, r, std::chars_format::scientific, 3);
    return std::string(buf, res.ptr);
  }

  double residual_;
};

/// The integration grid cuts off a non-negligible part of the density.
class TruncationError : public Error {
 public:
  using Error::Error;
};

}  // namespace fairwage
