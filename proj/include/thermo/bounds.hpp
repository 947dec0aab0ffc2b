#pragma once

#include "thermo/channels.hpp"
#include "thermo/spectra.hpp"

#include <utility>
#include <vector>

namespace thermo {

// <exp(beta (w_kk' - f_s))>_k for battery input |k>. Each system level s with p(s) > 0
// contributes p(s) e^{-beta f_s} = e^{-beta E_s}; levels with p(s) = 0 are skipped.
double conditional_jarzynski(const ThermalChannel& channel, const DiagonalState& sys, int k);

struct Theorem1Row {
  int k = 0;
  double lhs = 0.0;
  double rhs = 0.0;  // Z_S'(1 + e^{-beta delta_k}), delta_k = (k - k_min + 1) delta
  double slack = 0.0;
};

struct Theorem1Report {
  int k_min = 0;
  std::vector<Theorem1Row> rows;
  double worst_slack = 0.0;
  int worst_k = -1;
  bool passed = false;
};

inline constexpr double kBoundTol = 1e-10;

// Checks the bound for k in [k_min, N - band_buffer]. Throws ETIViolated unless the
// channel is translation invariant above k_min on levels 0..N-1.
Theorem1Report theorem1_certify(const ThermalChannel& channel, const DiagonalState& sys, int k_min, int band_buffer);

// ln eta_k with eta_k = Z_W e^{beta eps_k}.
double log_eta(const EnergySpectrum& battery, double beta, int k);
// d eta_k / d beta = eta_k (eps_k - <E>_beta).
double eta_derivative(const EnergySpectrum& battery, double beta, int k);

// Conservative system factor eta_S: the larger of Z_S e^{beta E_S'max} and Z_S' e^{beta E_S max}.
double eta_system(const EnergySpectrum& sys_in, const EnergySpectrum& sys_out, double beta);

struct SecondLawReport {
  double avg_work = 0.0;
  double delta_F = 0.0;
  double A_term = 0.0;
  double B_term_main = 0.0;
  double B_term_appendix = 0.0;
  double eta_S = 0.0;
  double bound = 0.0;  // -delta_F + A + B (appendix variant)
  double slack = 0.0;  // bound - <w>
  bool passed = false;
};

// <w> <= -dF + A + B with A summed over battery levels below k_min and
// B = ln(1 + eta_S sum_{k >= k_min} p_W(k) e^{-beta delta_k}) / beta.
SecondLawReport theorem2_bound(const ThermalChannel& channel, const DiagonalState& sys, const DiagonalState& bat,
                               int k_min);

struct SystemParams {
  int dim = 2;
  double max_energy = 0.0;  // E_S' max
};

// p(eps <= eps*) [c_S h + ln c_S] + c_S e^{-beta (eps* - eps_min)}, c_S = d_S e^{beta E_S'max},
// h = e^{-beta delta} [1 + beta delta e^{beta eps_min} (1 - e^{-beta delta})^{-2}].
double corollary1_correction(double eps_star, const DiagonalState& bat, const SystemParams& sys, double beta,
                             double delta, double eps_min);

// Battery populations proportional to exp(-beta^2 (eps_k - mean)^2 / 2).
DiagonalState gaussian_battery_state(const EnergySpectrum& battery, double mean, double beta);

}  // namespace thermo
