#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nilvf {

enum class ErrorCode {
  DimensionMismatch,
  IndexOutOfRange,
  ZeroDenominator,
  ZeroGcd,
  Incompatible,
  NotInvertible,
  Parse,
  NotClosed,
  NotNilpotent,
  NotNilpotentOperator,
  RankTooHigh,
  NonRationalConstants,
  ZeroAlgebra,
  Precondition,
  Internal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the engine carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax errors from the vector-field parser (1-based column).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::Parse, what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace nilvf
