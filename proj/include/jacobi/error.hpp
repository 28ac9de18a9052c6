#pragma once

#include <stdexcept>
#include <string>

namespace jacobi {

/// Input violates a documented precondition (CLI exit code 2).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed quantity breached its tolerance (CLI exit code 3).
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expansion file; carries the offending line and field.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& field, std::size_t line, const std::string& what)
      : ValidationError("parse error at line " + std::to_string(line) + ", field '" + field +
                        "': " + what),
        field_(field),
        line_(line) {}
  [[nodiscard]] const std::string& field() const { return field_; }
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

}  // namespace jacobi
