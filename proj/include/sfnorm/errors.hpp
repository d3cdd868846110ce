#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sfnorm {

/// Invalid argument combination (k out of range, alpha < 1, dimension mismatch, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sparsified probe vector came out with zero 1-norm and cannot be normalized.
class DegenerateVectorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an iteration exceeds its hard sweep cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix file could not be read. Carries the 1-based line and column of the
/// offending token when known (0 otherwise).
class IngestionError : public std::runtime_error {
 public:
  IngestionError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
  }
  std::size_t line_;
  std::size_t column_;
};

}  // namespace sfnorm
