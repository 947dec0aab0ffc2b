#include "thermo/erasure.hpp"

#include "thermo/construction.hpp"
#include "thermo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thermo {

namespace {

const EnergySpectrum& degenerate_qubit() {
  static const EnergySpectrum qubit({0.0, 0.0}, "qubit");
  return qubit;
}

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::DomainError, "beta must be positive");
}

void require_osc_range(double eps, double gamma) {
  if (!(eps >= 0.0 && eps < 0.5)) throw Error(ErrorCode::DomainError, "oscillator erasure needs 0 <= eps < 1/2");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorCode::DomainError, "gamma must lie in [0, 1]");
}

// Both weight processes map any input to |0> with probability 1 - eps.
std::vector<WeightTransition> weight_transitions(double eps, double lambda, double w0, double w1) {
  std::vector<WeightTransition> out;
  for (int s = 0; s < 2; ++s) {
    out.push_back({s, 0, w0, 1.0 - eps});
    if (lambda < 1.0) out.push_back({s, 1, w0, eps * (1.0 - lambda)});
    out.push_back({s, 1, w1, eps * lambda});
  }
  return out;
}

}  // namespace

void ErasureSetting::validate() const {
  if (!(eps >= 0.0 && eps < 0.5)) throw Error(ErrorCode::DomainError, "eps must lie in [0, 1/2)");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorCode::DomainError, "gamma must lie in [0, 1]");
  if (!(c >= 0.0)) throw Error(ErrorCode::DomainError, "fluctuation budget must be non-negative");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw Error(ErrorCode::DomainError, "lambda must lie in (0, 1]");
  require_beta(beta);
}

WeightProcess weight_process(double eps, double beta) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::DomainError, "weight erasure needs 0 < eps < 1");
  require_beta(beta);
  WeightProcess out;
  out.w0 = -(std::log(2.0) + std::log1p(-eps)) / beta;
  out.w1 = -(std::log(2.0) + std::log(eps)) / beta;
  out.work = WorkDistribution({{out.w0, 1.0 - eps}, {out.w1, eps}});
  out.gibbs_residual =
      weight_gibbs_residual(degenerate_qubit(), degenerate_qubit(), beta, weight_transitions(eps, 1.0, out.w0, out.w1));
  return out;
}

double weight_error_bound(double c, double beta) {
  if (!(c >= 0.0)) throw Error(ErrorCode::DomainError, "fluctuation budget must be non-negative");
  require_beta(beta);
  return 0.5 * std::exp(-beta * c);
}

WeightProcess lambda_process(double eps, double lambda, double beta) {
  if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorCode::DomainError, "lambda process needs 0 < eps < 1/2");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw Error(ErrorCode::DomainError, "lambda must lie in (0, 1]");
  require_beta(beta);
  // Row s' = 1 of the Gibbs conditions: (1 - lambda) e^{beta w0} + lambda e^{beta w1} = 1 / (2 eps).
  const double arg = (1.0 / (2.0 * eps) - (1.0 - lambda) / (2.0 * (1.0 - eps))) / lambda;
  if (!(arg > 0.0)) throw Error(ErrorCode::DomainError, "no real w1 for this (eps, lambda)");
  WeightProcess out;
  out.w0 = -(std::log(2.0) + std::log1p(-eps)) / beta;
  out.w1 = std::log(arg) / beta;
  out.work = WorkDistribution({{out.w0, 1.0 - lambda * eps}, {out.w1, lambda * eps}});
  out.gibbs_residual = weight_gibbs_residual(degenerate_qubit(), degenerate_qubit(), beta,
                                             weight_transitions(eps, lambda, out.w0, out.w1));
  return out;
}

double weight_gibbs_residual(const EnergySpectrum& sys_in, const EnergySpectrum& sys_out, double beta,
                             const std::vector<WeightTransition>& transitions) {
  std::vector<double> rows(static_cast<size_t>(sys_out.size()), 0.0);
  for (const WeightTransition& t : transitions) {
    if (t.s_in < 0 || t.s_in >= sys_in.size() || t.s_out < 0 || t.s_out >= sys_out.size()) {
      throw Error(ErrorCode::IndexOutOfRange, "transition level out of range");
    }
    const double exponent = beta * (sys_out[t.s_out] - sys_in[t.s_in] + t.work);
    if (std::abs(exponent) > kMaxExponent) throw Error(ErrorCode::OverflowRisk, "transition exponent exceeds 700");
    rows[static_cast<size_t>(t.s_out)] += t.prob * std::exp(exponent);
  }
  double worst = 0.0;
  for (double r : rows) worst = std::max(worst, std::abs(r - 1.0));
  return worst;
}

WitSubchannels oscillator_erasure_subchannels(double eps, double beta) {
  require_osc_range(eps, 0.0);
  require_beta(beta);
  const double q = 1.0 / (2.0 * (1.0 - eps));
  const double rest = (1.0 - 2.0 * eps) / (2.0 * (1.0 - eps));
  WitSubchannels sub;
  sub.system = degenerate_qubit();
  sub.beta = beta;
  sub.delta = std::log(2.0 * (1.0 - eps)) / beta;
  sub.r00 = Matrix::Zero(2, 2);
  sub.r00.row(1).setConstant(rest);
  sub.r01 = q * Matrix::Identity(2, 2);
  sub.r10.resize(2, 2);
  sub.r10 << 1.0 - eps, 1.0 - eps, eps, eps;
  sub.r11 = Matrix::Zero(2, 2);
  return sub;
}

double oscillator_erasure_avg_closed_form(double eps, double gamma, double beta) {
  require_osc_range(eps, gamma);
  require_beta(beta);
  const double delta = std::log(2.0 * (1.0 - eps)) / beta;
  return -delta * (1.0 - 2.0 * gamma * (1.0 - eps) / (1.0 - 2.0 * eps));
}

double oscillator_erasure_var_closed_form(double eps, double gamma, double beta) {
  require_osc_range(eps, gamma);
  require_beta(beta);
  const double delta = std::log(2.0 * (1.0 - eps)) / beta;
  const double denom = (1.0 - 2.0 * eps) * (1.0 - 2.0 * eps);
  return gamma * delta * delta * 2.0 * (1.0 - eps) * (3.0 - 2.0 * eps - 2.0 * gamma * (1.0 - eps)) / denom;
}

double weight_erasure_avg(double eps, double beta) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorCode::DomainError, "eps must lie in [0, 1)");
  require_beta(beta);
  return (binary_entropy(eps) - std::log(2.0)) / beta;
}

double weight_erasure_var(double eps, double beta) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorCode::DomainError, "eps must lie in [0, 1)");
  require_beta(beta);
  if (eps == 0.0) return 0.0;
  const double gap = (std::log1p(-eps) - std::log(eps)) / beta;
  return eps * (1.0 - eps) * gap * gap;
}

namespace {

struct DirectStats {
  WorkDistribution work;
  double avg = 0.0;
  double var = 0.0;
};

DirectStats simulate(const WitSubchannels& sub, double gamma, int N) {
  const ThermalChannel channel = extend_to_oscillator(sub, N);
  const DiagonalState sys({0.5, 0.5}, sub.system);
  std::vector<double> bat(static_cast<size_t>(N) + 1, 0.0);
  bat[0] = gamma;
  bat[1] = 1.0 - gamma;
  DirectStats out;
  out.work = work_distribution(channel, sys, DiagonalState(std::move(bat), channel.battery()));
  out.avg = average_work(out.work);
  out.var = variance(out.work);
  return out;
}

}  // namespace

ErasureStats oscillator_erasure_stats(double eps, double gamma, int N, double beta) {
  require_osc_range(eps, gamma);
  require_beta(beta);
  if (N < 0) throw Error(ErrorCode::DomainError, "N must be non-negative");
  const WitSubchannels sub = oscillator_erasure_subchannels(eps, beta);
  ErasureStats out;
  out.eps = eps;
  out.gamma = gamma;
  out.beta = beta;
  out.delta = sub.delta;
  out.eps_tot = eps * (1.0 - gamma) + gamma;
  out.num_steps = N == 0 ? auto_size_levels(sub, 1e-16) : N;
  out.tail = truncation_tail(sub, out.num_steps);
  out.avg_closed = oscillator_erasure_avg_closed_form(eps, gamma, beta);
  out.var_closed = oscillator_erasure_var_closed_form(eps, gamma, beta);
  DirectStats direct = simulate(sub, gamma, out.num_steps);
  const DirectStats doubled = simulate(sub, gamma, 2 * out.num_steps);
  out.avg_direct = direct.avg;
  out.var_direct = direct.var;
  out.f1_direct = f1_measure(direct.work);
  out.avg_doubling_change = std::abs(doubled.avg - direct.avg);
  out.var_doubling_change = std::abs(doubled.var - direct.var);
  out.work = std::move(direct.work);
  return out;
}

double exp_cost_weight_bound(double c) {
  if (!(c >= 0.0)) throw Error(ErrorCode::DomainError, "fluctuation budget must be non-negative");
  if (c >= 0.5) return 0.0;
  return std::max(0.0, 0.5 - c / (2.0 * (1.0 - c)));
}

double exp_cost_closed_form(double eps, double gamma, double beta) {
  require_osc_range(eps, gamma);
  require_beta(beta);
  const double bd = std::log(2.0 * (1.0 - eps));
  const double e = std::exp(bd);
  if (e >= 2.0) throw Error(ErrorCode::PoleError, "closed form has a pole at e^{beta delta} = 2");
  return std::expm1(2.0 * bd * gamma) - 0.5 * gamma * std::exp(-2.0 * bd * gamma) * (1.0 - e / (2.0 - e));
}

ExpCostReport exp_cost_oscillator(double eps, double gamma, double beta, int N) {
  const ErasureStats stats = oscillator_erasure_stats(eps, gamma, N, beta);
  ExpCostReport out;
  out.num_steps = stats.num_steps;
  out.tail = stats.tail;
  const CostFunction cost([beta](double x) { return std::expm1(beta * std::abs(x)); }, "exp-beta");
  out.direct = general_cost(stats.work, cost);
  try {
    out.closed_form = exp_cost_closed_form(eps, gamma, beta);
    out.discrepancy = *out.closed_form - out.direct;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PoleError) throw;
  }
  return out;
}

PointMassCheck point_mass_work_consistency(const DiagonalState& target, double beta) {
  require_beta(beta);
  const EnergySpectrum& spec = target.spectrum();
  const double log_z = log_partition_function(spec, beta);
  PointMassCheck out;
  out.consistent = true;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int s = 0; s < spec.size(); ++s) {
    double w = std::numeric_limits<double>::infinity();
    if (target[s] > 0.0) w = -spec[s] - (std::log(target[s]) + log_z) / beta;
    else out.consistent = false;
    out.required_work.push_back(w);
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  out.spread = hi - lo;
  out.consistent = out.consistent && out.spread <= 1e-12;
  return out;
}

}  // namespace thermo
