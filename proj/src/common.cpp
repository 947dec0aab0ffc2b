#include "thermo/errors.hpp"
#include "thermo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thermo {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OverflowRisk: return "OverflowRisk";
    case ErrorCode::ZeroProbability: return "ZeroProbability";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonUniformBattery: return "NonUniformBattery";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SpectrumMismatch: return "SpectrumMismatch";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::InvalidSubchannels: return "InvalidSubchannels";
    case ErrorCode::NonConvergentSeries: return "NonConvergentSeries";
    case ErrorCode::ETIViolated: return "ETIViolated";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::PoleError: return "PoleError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

double log_sum_exp(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double v : x) acc += std::exp(v - m);
  return m + std::log(acc);
}

double norm1(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace thermo
