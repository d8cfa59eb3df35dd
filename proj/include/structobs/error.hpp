#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace structobs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValidationKind {
  NonPositiveDimension,
  DimensionMismatch,
  OutOfRange,
  ZeroDisturbanceColumn,
};

class ValidationError : public Error {
 public:
  ValidationError(ValidationKind kind, std::string message, std::size_t mode = 0,
                  std::size_t column = 0)
      : Error(std::move(message)), kind_(kind), mode_(mode), column_(column) {}

  ValidationKind kind() const noexcept { return kind_; }
  // 1-based mode index, 0 when not tied to a mode.
  std::size_t mode() const noexcept { return mode_; }
  // 1-based input column for ZeroDisturbanceColumn.
  std::size_t column() const noexcept { return column_; }

 private:
  ValidationKind kind_;
  std::size_t mode_;
  std::size_t column_;
};

class WrongClass : public Error {
 public:
  using Error::Error;
};

class InternalVerificationFailure : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line = 0, std::size_t column = 0)
      : Error(std::move(message)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace structobs
