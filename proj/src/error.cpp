#include "parspec/error.hpp"
#include "parspec/types.hpp"

#include <cmath>

namespace parspec {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateFrequency: return "DegenerateFrequency";
    case ErrorCode::OnSpectrum: return "OnSpectrum";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::MaxTermsExceeded: return "MaxTermsExceeded";
    case ErrorCode::NyquistViolation: return "NyquistViolation";
    case ErrorCode::ZeroModeSingularity: return "ZeroModeSingularity";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::BlowupDetected: return "BlowupDetected";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

FreqVector::FreqVector(std::vector<double> v) : xi(std::move(v)) {
  double s = 0.0;
  for (double x : xi) s += x * x;
  magnitude = std::sqrt(s);
}

FreqVector FreqVector::along_axis(int n, double mag, int axis) {
  require(n >= 1 && axis >= 0 && axis < n, "along_axis: bad axis");
  std::vector<double> v(n, 0.0);
  v[axis] = mag;
  return FreqVector(std::move(v));
}

}  // namespace parspec
