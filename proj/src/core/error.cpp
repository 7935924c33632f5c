#include "dioph/error.hpp"

namespace dioph {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DependentInput: return "DependentInput";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::NoCertifiedSamples: return "NoCertifiedSamples";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::DomainError: return "DomainError";
  }
  return "Unknown";
}

}  // namespace dioph
