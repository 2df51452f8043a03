#pragma once

#include <stdexcept>
#include <string>

namespace parspec {

enum class ErrorCode {
  InvalidArgument,
  DegenerateFrequency,
  OnSpectrum,
  NoContraction,
  MaxTermsExceeded,
  NyquistViolation,
  ZeroModeSingularity,
  TruncationTooSmall,
  QuadratureNotConverged,
  WindowTooNarrow,
  CFLViolation,
  BlowupDetected,
  BoxTooSmall,
  ConfigError,
  IoError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

inline void require(bool cond, const std::string& message) {
  if (!cond) raise(ErrorCode::InvalidArgument, message);
}

}  // namespace parspec
