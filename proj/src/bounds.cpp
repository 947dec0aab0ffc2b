#include "thermo/bounds.hpp"

#include "thermo/batteries.hpp"
#include "thermo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thermo {

double conditional_jarzynski(const ThermalChannel& channel, const DiagonalState& sys, int k) {
  if (!(sys.spectrum() == channel.sys_in())) throw Error(ErrorCode::SpectrumMismatch, "system state spectrum");
  if (k < 0 || k >= channel.battery_levels()) throw Error(ErrorCode::IndexOutOfRange, "battery level");
  const double beta = channel.beta();
  std::vector<double> terms;
  for (int s = 0; s < channel.d_in(); ++s) {
    if (sys[s] == 0.0) continue;
    for (int kp = 0; kp < channel.battery_levels(); ++kp) {
      const double w = channel.battery()[kp] - channel.battery()[k];
      for (int sp = 0; sp < channel.d_out(); ++sp) {
        const double r = channel(sp, kp, s, k);
        if (r > 0.0) terms.push_back(std::log(r) + beta * (w - channel.sys_in()[s]));
      }
    }
  }
  return std::exp(log_sum_exp(terms));
}

Theorem1Report theorem1_certify(const ThermalChannel& channel, const DiagonalState& sys, int k_min, int band_buffer) {
  const int N = channel.battery_levels() - 1;
  const auto spacing = channel.battery().uniform_spacing();
  if (!spacing) throw Error(ErrorCode::NonUniformBattery, "the Jarzynski-type bound needs an evenly spaced battery");
  const ETIReport eti = check_eti(channel, k_min, std::max(N - 1, k_min));
  if (!eti.holds) {
    throw Error(ErrorCode::ETIViolated, "translation invariance fails by " + std::to_string(eti.worst_main.value));
  }
  const double beta = channel.beta();
  const double z_out = partition_function(channel.sys_out(), beta);
  Theorem1Report rep;
  rep.k_min = k_min;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  for (int k = k_min; k <= N - band_buffer; ++k) {
    Theorem1Row row;
    row.k = k;
    row.lhs = conditional_jarzynski(channel, sys, k);
    row.rhs = z_out * (1.0 + std::exp(-beta * (k - k_min + 1) * *spacing));
    row.slack = row.rhs - row.lhs;
    if (row.slack < rep.worst_slack) {
      rep.worst_slack = row.slack;
      rep.worst_k = k;
    }
    rep.rows.push_back(row);
  }
  rep.passed = rep.rows.empty() || rep.worst_slack >= -kBoundTol;
  return rep;
}

double log_eta(const EnergySpectrum& battery, double beta, int k) {
  if (k < 0 || k >= battery.size()) throw Error(ErrorCode::IndexOutOfRange, "battery level");
  return log_partition_function(battery, beta) + beta * battery[k];
}

double eta_derivative(const EnergySpectrum& battery, double beta, int k) {
  const double eta = std::exp(log_eta(battery, beta, k));
  return eta * (battery[k] - gibbs_mean_energy(battery, beta));
}

double eta_system(const EnergySpectrum& sys_in, const EnergySpectrum& sys_out, double beta) {
  const double a = log_partition_function(sys_in, beta) + beta * sys_out.max_level();
  const double b = log_partition_function(sys_out, beta) + beta * sys_in.max_level();
  return std::exp(std::max(a, b));
}

SecondLawReport theorem2_bound(const ThermalChannel& channel, const DiagonalState& sys, const DiagonalState& bat,
                               int k_min) {
  const int N = channel.battery_levels() - 1;
  const auto spacing = channel.battery().uniform_spacing();
  if (!spacing) throw Error(ErrorCode::NonUniformBattery, "second-law bound needs an evenly spaced battery");
  const ETIReport eti = check_eti(channel, k_min, std::max(N - 1, k_min));
  if (!eti.holds) {
    throw Error(ErrorCode::ETIViolated, "translation invariance fails by " + std::to_string(eti.worst_main.value));
  }
  const double beta = channel.beta();
  SecondLawReport rep;
  rep.avg_work = average_work(work_distribution(channel, sys, bat));
  const DiagonalState sys_after = output_system_marginal(channel, apply(channel, sys, bat));
  const double f_before = free_energy(sys, beta);
  rep.delta_F = free_energy(sys_after, beta) - f_before;
  rep.eta_S = eta_system(channel.sys_in(), channel.sys_out(), beta);

  const double e_max_out = channel.sys_out().max_level();
  double tail = 0.0;
  for (int k = 0; k <= N; ++k) {
    const double p = bat[k];
    if (p == 0.0) continue;
    if (k < k_min) {
      rep.A_term += p * (e_max_out - f_before - rep.eta_S * eta_derivative(channel.battery(), beta, k));
    } else {
      tail += p * std::exp(-beta * (k - k_min + 1) * *spacing);
    }
  }
  rep.B_term_main = std::log1p(tail) / beta;
  rep.B_term_appendix = std::log1p(rep.eta_S * tail) / beta;
  rep.bound = -rep.delta_F + rep.A_term + rep.B_term_appendix;
  rep.slack = rep.bound - rep.avg_work;
  rep.passed = rep.slack >= -kBoundTol;
  return rep;
}

double corollary1_correction(double eps_star, const DiagonalState& bat, const SystemParams& sys, double beta,
                             double delta, double eps_min) {
  if (!(eps_star > eps_min) || eps_min < 0.0) throw Error(ErrorCode::DomainError, "need eps* > eps_min >= 0");
  if (!(delta > 0.0) || !(beta > 0.0)) throw Error(ErrorCode::DomainError, "need positive delta and beta");
  if (sys.dim < 1) throw Error(ErrorCode::DomainError, "system dimension must be positive");
  if (beta * std::max(eps_min, std::abs(sys.max_energy)) > kMaxExponent) {
    throw Error(ErrorCode::OverflowRisk, "beta * energy exceeds 700");
  }
  double below = 0.0;
  for (int k = 0; k < bat.size(); ++k) {
    if (bat.spectrum()[k] <= eps_star) below += bat[k];
  }
  const double log_c = std::log(static_cast<double>(sys.dim)) + beta * sys.max_energy;
  const double bd = beta * delta;
  const double h = std::exp(-bd) + bd * std::exp(beta * eps_min - bd - 2.0 * std::log(-std::expm1(-bd)));
  return below * (std::exp(log_c) * h + log_c) + std::exp(log_c - beta * (eps_star - eps_min));
}

DiagonalState gaussian_battery_state(const EnergySpectrum& battery, double mean, double beta) {
  std::vector<double> logw(static_cast<size_t>(battery.size()));
  for (int k = 0; k < battery.size(); ++k) {
    const double x = beta * (battery[k] - mean);
    logw[static_cast<size_t>(k)] = -0.5 * x * x;
  }
  const double log_z = log_sum_exp(logw);
  std::vector<double> p(logw.size());
  double total = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    p[k] = std::exp(logw[k] - log_z);
    total += p[k];
  }
  for (double& v : p) v /= total;
  return DiagonalState(std::move(p), battery);
}

}  // namespace thermo
