#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blowup {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different rings, or an image lives in the wrong ring.
class AmbientMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in coefficient field") {}
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'") {}
};

/// A Gröbner basis, point search or rejection loop ran past its configured cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line` is 0 when the input was a single string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return "parse error at column " + std::to_string(column) + ": " + what;
    return "parse error at line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// Matrix has the wrong shape, or an entry is not a linear form in its block.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An operation's documented precondition does not hold for this input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input fails the hypotheses of the main-theorem pipeline.
class HypothesisError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A computed quantity contradicts a statement that must hold.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace blowup
