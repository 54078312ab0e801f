#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

enum class ErrorCode {
  NonPositiveLength,
  OverlappingSlits,
  GridTooNarrow,
  ZeroNorm,
  GridMismatch,
  OutOfRange,
  AliasingRisk,
  NonPositiveDistance,
  NonCompactSupport,
  UnderResolvedSlit,
  TooFewPeaks,
  UnderResolved,
  ConfigError,
  SweepError,
};

const char* error_code_name(ErrorCode code);

/// All library failures throw this; `code` identifies the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace biphoton
