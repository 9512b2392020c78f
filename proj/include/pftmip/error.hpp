#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pftmip {

// Thrown when a problem violates its structural invariants (dimension
// mismatch, non-finite coefficient, crossed bounds). Distinct from an
// Infeasible solve status.
class MalformedProblem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown by model builders when their inputs do not satisfy the
// preconditions (unknown node, p larger than the candidate set, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Text-format error carrying a 1-based line and (optionally) column.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(format(line, column, what)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& what) {
    if (line == 0) return what;  // no position (whole-file problem)
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace pftmip
