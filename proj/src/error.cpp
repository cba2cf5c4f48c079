#include "cyclic/error.hpp"

namespace cyclic {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NonSpd: return "NonSpd";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateDof: return "DegenerateDof";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::RootFailure: return "RootFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::RatioOutOfRange: return "RatioOutOfRange";
    case ErrorCode::NoRegeneration: return "NoRegeneration";
    case ErrorCode::InsufficientTours: return "InsufficientTours";
    case ErrorCode::TooFewBatches: return "TooFewBatches";
    case ErrorCode::InsufficientLag: return "InsufficientLag";
    case ErrorCode::ZeroTrace: return "ZeroTrace";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NonSpd:
    case ErrorCode::DegenerateDof:
    case ErrorCode::StepFailure:
    case ErrorCode::RootFailure:
    case ErrorCode::RatioOutOfRange:
    case ErrorCode::NoRegeneration:
    case ErrorCode::InsufficientTours:
    case ErrorCode::TooFewBatches:
    case ErrorCode::ZeroTrace:
    case ErrorCode::BudgetExceeded:
      return true;
    default:
      return false;
  }
}

}  // namespace cyclic
