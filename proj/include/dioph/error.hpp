#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

enum class ErrorCode {
  InvalidArgument,
  InvalidDescriptor,
  PrecisionExhausted,
  Unsupported,
  BudgetExceeded,
  OddN,
  IndexOutOfRange,
  DependentInput,
  EmptyWindow,
  NoCertifiedSamples,
  BracketFailure,
  DomainError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace dioph
