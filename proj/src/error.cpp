#include "betakit/error.hpp"

namespace betakit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::DigitUndetermined: return "DigitUndetermined";
    case ErrorCode::InsufficientKneadingDepth: return "InsufficientKneadingDepth";
    case ErrorCode::InvalidDigit: return "InvalidDigit";
    case ErrorCode::IndistinguishableAtDepth: return "IndistinguishableAtDepth";
    case ErrorCode::NotAPath: return "NotAPath";
    case ErrorCode::NotFoundWithinDepth: return "NotFoundWithinDepth";
    case ErrorCode::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::PrefixTooShort: return "PrefixTooShort";
    case ErrorCode::NoAdmissibleExtension: return "NoAdmissibleExtension";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::UnboundedDaEvidence: return "UnboundedDaEvidence";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::ToleranceUnreachableAtDepth: return "ToleranceUnreachableAtDepth";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace betakit
