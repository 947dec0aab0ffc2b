#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thermo {

enum class ErrorCode {
  OverflowRisk,
  ZeroProbability,
  SupportMismatch,
  InvalidState,
  DimensionMismatch,
  NonUniformBattery,
  IndexOutOfRange,
  SpectrumMismatch,
  SolverFailure,
  Infeasible,
  InvalidSubchannels,
  NonConvergentSeries,
  ETIViolated,
  DomainError,
  PreconditionViolated,
  PoleError,
  ConfigError,
  ParseError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace thermo
