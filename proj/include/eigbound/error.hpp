#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eigbound {

enum class ErrorCode {
  InvalidArgument,
  InvalidDims,
  NotPositiveDefinite,
  CountExceedsOrder,
  RankZero,
  ZeroDenominator,
  SingularGram,
  NonpositiveEigenvalue,
  NotConverged,
  ParseError,
  InvariantViolation,
  NoInteriorDofs,
  DegenerateTriangle,
  DepthTooSmall,
  AlphaNonpositive,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above. The
/// message is prefixed with the code name so CLI output names the error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// ParseError keeps the 1-based line number (0 when the file cannot be read).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace eigbound
