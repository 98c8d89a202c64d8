#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gcis {

enum class ErrorCode {
  NonIncreasing,
  BadParameter,
  EmptyWindow,
  WindowTooSmall,
  NoEnumeration,
  SingularSystem,
  GridTooCoarse,
  TooFewTerms,
  OnZero,
  UnsortedInput,
  UnknownScenario,
  ConfigInvalid,
  ThresholdFailed,
  WindowTooLarge,
  ComplexInput,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code; what() is "<Code>: <detail>".
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonIncreasing: return "NonIncreasing";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::NoEnumeration: return "NoEnumeration";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::TooFewTerms: return "TooFewTerms";
    case ErrorCode::OnZero: return "OnZero";
    case ErrorCode::UnsortedInput: return "UnsortedInput";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::ThresholdFailed: return "ThresholdFailed";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::ComplexInput: return "ComplexInput";
  }
  return "Unknown";
}

}  // namespace gcis
