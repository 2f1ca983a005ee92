#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdecomp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or register sizes that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Input that violates a numeric contract, e.g. a matrix that is not unitary.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Malformed text input. Line and column are 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line == 0 ? what
                        : what + " (line " + std::to_string(line) + ", column " +
                              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace qdecomp
