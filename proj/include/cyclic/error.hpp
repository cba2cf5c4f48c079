#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclic {

enum class ErrorCode {
  NotPositiveDefinite,
  NonSpd,
  DomainError,
  DegenerateDof,
  StepFailure,
  EmptySelection,
  InvalidState,
  RootFailure,
  ParseError,
  SchemaError,
  RatioOutOfRange,
  NoRegeneration,
  InsufficientTours,
  TooFewBatches,
  InsufficientLag,
  ZeroTrace,
  BudgetExceeded,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// True for codes that signal numerical degeneracy of an estimate or kernel
/// (the CLI maps these to exit status 3).
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A kernel failed inside a chain run. Carries the phase (1..k) and the
/// zero-based kernel application index at which it happened.
class StepFailure : public Error {
 public:
  StepFailure(int phase, std::uint64_t iteration, const std::string& cause)
      : Error(ErrorCode::StepFailure, "phase " + std::to_string(phase) + ", iteration " +
                                          std::to_string(iteration) + ": " + cause),
        phase_(phase),
        iteration_(iteration) {}

  int phase() const noexcept { return phase_; }
  std::uint64_t iteration() const noexcept { return iteration_; }

 private:
  int phase_;
  std::uint64_t iteration_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace cyclic
