#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace betakit {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  PreconditionViolated,
  PrecisionExhausted,
  DigitUndetermined,
  InsufficientKneadingDepth,
  InvalidDigit,
  IndistinguishableAtDepth,
  NotAPath,
  NotFoundWithinDepth,
  EnumerationBudgetExceeded,
  PrefixTooShort,
  NoAdmissibleExtension,
  NonConvergence,
  UnboundedDaEvidence,
  BracketFailure,
  ToleranceUnreachableAtDepth,
  VerificationFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace betakit
