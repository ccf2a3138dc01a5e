#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fvsk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a structural requirement.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain, e.g. a reduction
/// rule whose applicability condition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed. Indicates a bug, never bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// An exact solver was asked to run beyond its configured size cap.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace fvsk
