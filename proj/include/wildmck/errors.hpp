#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wildmck {

enum class ErrorCode {
  DivergentSeries,
  NotPrime,
  TooLarge,
  TruncationExceeded,
  IncompatibleField,
  NotClosed,
  ModularInput,
  InvalidLevel,
  DimensionExceedsP,
  BadLevel,
  BadLevels,
  UnsupportedSubgroupKind,
  DivergentAtQ0,
  MalformedSpec,
  Unsupported,
  ParseError,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivergentSeries: return "DivergentSeries";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TruncationExceeded: return "TruncationExceeded";
    case ErrorCode::IncompatibleField: return "IncompatibleField";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::ModularInput: return "ModularInput";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::DimensionExceedsP: return "DimensionExceedsP";
    case ErrorCode::BadLevel: return "BadLevel";
    case ErrorCode::BadLevels: return "BadLevels";
    case ErrorCode::UnsupportedSubgroupKind: return "UnsupportedSubgroupKind";
    case ErrorCode::DivergentAtQ0: return "DivergentAtQ0";
    case ErrorCode::MalformedSpec: return "MalformedSpec";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code), message_(what) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace wildmck
