#include "swarmbo/error.hpp"

namespace swarmbo {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptySpace: return "EmptySpace";
    case ErrorCode::InvertedBounds: return "InvertedBounds";
    case ErrorCode::EmptyIntegerRange: return "EmptyIntegerRange";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OmegaOutOfRange: return "OmegaOutOfRange";
    case ErrorCode::LearningFactorsOutOfRange: return "LearningFactorsOutOfRange";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::FactorizationFailure: return "FactorizationFailure";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ObjectiveFailure: return "ObjectiveFailure";
    case ErrorCode::InvalidMethodParams: return "InvalidMethodParams";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::StabilityViolation: return "StabilityViolation";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace swarmbo
