#pragma once

#include <stdexcept>
#include <string>

namespace duelbench {

enum class ErrorCode {
  NonSquare,
  OutOfRange,
  AsymmetryViolation,
  BadDiagonal,
  NoCondorcet,
  AlphaOutOfTheory,
  ZeroGap,
  BadParams,
  WinnerNotInPair,
  BadStep,
  MismatchedCheckpoints,
  NotMergePolicy,
  IncompatibleRegretMode,
  IoError,
  ParseError,
  Internal,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::AsymmetryViolation: return "AsymmetryViolation";
    case ErrorCode::BadDiagonal: return "BadDiagonal";
    case ErrorCode::NoCondorcet: return "NoCondorcet";
    case ErrorCode::AlphaOutOfTheory: return "AlphaOutOfTheory";
    case ErrorCode::ZeroGap: return "ZeroGap";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::WinnerNotInPair: return "WinnerNotInPair";
    case ErrorCode::BadStep: return "BadStep";
    case ErrorCode::MismatchedCheckpoints: return "MismatchedCheckpoints";
    case ErrorCode::NotMergePolicy: return "NotMergePolicy";
    case ErrorCode::IncompatibleRegretMode: return "IncompatibleRegretMode";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Library-wide exception carrying a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) raise(code, message);
}

}  // namespace duelbench
