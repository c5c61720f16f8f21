#pragma once

#include <stdexcept>
#include <string>

namespace freqsec {

enum class Errc {
  NonPositiveRamp,
  NegativeDelay,
  AllocationOutOfBounds,
  EmptyPortfolio,
  ZeroInertia,
  SteadyStateInfeasible,
  ProbabilityOutOfRange,
  UnboundedBigM,
  NumericalFailure,
  Infeasible,
  NodeLimit,
  StepTooLarge,
  NotConservative,
  BadInput,
};

const char* errc_name(Errc code);

/// Domain error carrying a machine-checkable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace freqsec
