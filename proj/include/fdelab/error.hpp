#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fdelab {

enum class ErrorCode {
  kInvalidArgument,
  kStepSizeUnderflow,
  kHistoryTooShort,
  kRhsFailure,
  kOutOfRange,
  kNonpositiveDelay,
  kNonMonotoneTime,
  kNoConvergence,
  kCollision,
  kSuperluminal,
  kDegenerateDenominator,
  kWrongBasin,
  kMismatchedWindows,
  kConfigParse,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kStepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::kHistoryTooShort: return "HistoryTooShort";
    case ErrorCode::kRhsFailure: return "RhsFailure";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNonpositiveDelay: return "NonpositiveDelay";
    case ErrorCode::kNonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kCollision: return "Collision";
    case ErrorCode::kSuperluminal: return "Superluminal";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kWrongBasin: return "WrongBasin";
    case ErrorCode::kMismatchedWindows: return "MismatchedWindows";
    case ErrorCode::kConfigParse: return "ConfigParse";
  }
  return "Unknown";
}

/// Structured failure raised by every fdelab component. `code()` carries the
/// machine-readable category; `what()` is "<Name>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace fdelab
