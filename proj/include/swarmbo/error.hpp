#pragma once

#include <stdexcept>
#include <string>

namespace swarmbo {

enum class ErrorCode {
  EmptySpace,
  InvertedBounds,
  EmptyIntegerRange,
  DuplicateName,
  DimensionMismatch,
  OmegaOutOfRange,
  LearningFactorsOutOfRange,
  InvalidParams,
  FactorizationFailure,
  LengthMismatch,
  ObjectiveFailure,
  InvalidMethodParams,
  GridTooLarge,
  StabilityViolation,
  ConfigError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Library-wide exception. Every failure raised by swarmbo carries a code so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace swarmbo
