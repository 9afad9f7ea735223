#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppac {

enum class ErrorCode {
  DimensionMismatch,
  SingularSylvester,
  NoConvergence,
  UnstableTarget,
  ZeroAtOne,
  InsufficientHistory,
  ModeMismatch,
  ConfigInvalid,
  NotApplicable,
  ZeroInitialState,
  SigmaTooSmall,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularSylvester: return "SingularSylvester";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::UnstableTarget: return "UnstableTarget";
    case ErrorCode::ZeroAtOne: return "ZeroAtOne";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ZeroInitialState: return "ZeroInitialState";
    case ErrorCode::SigmaTooSmall: return "SigmaTooSmall";
  }
  return "Unknown";
}

// All library failures are reported through this exception; `code()` names
// the violated precondition so callers (and the CLI) can map it to an exit
// status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppac
