#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gtue {

enum class ErrorCode {
  InvalidArgument,
  UndefinedProduct,
  UnboundedBelowInput,
  UnboundedAboveInput,
  SureLoss,
  DimensionCapExceeded,
  NotBoundedBelow,
  NotBoundedAbove,
  HorizonMismatch,
  NegativeWeight,
  NotTerminal,
  DepthExceeded,
  MonotonicityViolated,
  NotASupermartingale,
  DominanceFailed,
  SpaceMismatch,
  BadWindow,
  NonFiniteRoot,
  WeightSumMismatch,
  WindowOutsideRange,
  CapExceeded,
  Schema,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UndefinedProduct: return "UndefinedProduct";
    case ErrorCode::UnboundedBelowInput: return "UnboundedBelowInput";
    case ErrorCode::UnboundedAboveInput: return "UnboundedAboveInput";
    case ErrorCode::SureLoss: return "SureLoss";
    case ErrorCode::DimensionCapExceeded: return "DimensionCapExceeded";
    case ErrorCode::NotBoundedBelow: return "NotBoundedBelow";
    case ErrorCode::NotBoundedAbove: return "NotBoundedAbove";
    case ErrorCode::HorizonMismatch: return "HorizonMismatch";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NotTerminal: return "NotTerminal";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::MonotonicityViolated: return "MonotonicityViolated";
    case ErrorCode::NotASupermartingale: return "NotASupermartingale";
    case ErrorCode::DominanceFailed: return "DominanceFailed";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::BadWindow: return "BadWindow";
    case ErrorCode::NonFiniteRoot: return "NonFiniteRoot";
    case ErrorCode::WeightSumMismatch: return "WeightSumMismatch";
    case ErrorCode::WindowOutsideRange: return "WindowOutsideRange";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::Schema: return "Schema";
  }
  return "Unknown";
}

/// Every library failure is reported through this type; `code()` carries the
/// taxonomy, `what()` a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// Diagnostic without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace gtue
