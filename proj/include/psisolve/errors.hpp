#pragma once

#include <stdexcept>
#include <string>

namespace psisolve {

enum class ErrorCode {
  LengthMismatch,
  AllWeightsZero,
  NegativeWeight,
  NaNInput,
  BadInterval,
  BadProbabilities,
  BadOptions,
  InvalidParameter,
  NoAnalyticTheta1,
  DomainError,
  OutOfHull,
  NotIncreasing,
  Theta1Order,
  UnknownId,
  ParseError,
  EmptyInput,
};

const char* error_code_name(ErrorCode code);

/// All input/validation failures are thrown as Error; solver failures
/// (no sign flip, plateaus, ...) are returned as data instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace psisolve
