#pragma once

#include "thermo/batteries.hpp"
#include "thermo/channels.hpp"
#include "thermo/spectra.hpp"

#include <optional>
#include <vector>

namespace thermo {

// Erasure of a qubit with a fully degenerate Hamiltonian into |0>, failing with
// probability eps. eps_tot = eps (1 - gamma) + gamma for vacuum occupation gamma.
struct ErasureSetting {
  double eps = 0.0;
  double gamma = 0.0;
  double c = 0.0;
  double lambda = 1.0;
  double beta = 1.0;

  double eps_tot() const { return eps * (1.0 - gamma) + gamma; }
  // Throws DomainError when a field is out of range.
  void validate() const;
};

struct WeightProcess {
  WorkDistribution work;
  double w0 = 0.0;  // work when the erasure succeeds
  double w1 = 0.0;  // work when it fails
  double gibbs_residual = 0.0;
};

// Optimal ideal-weight erasure: w0 = -(ln 2 + ln(1 - eps))/beta, w1 = -(ln 2 + ln eps)/beta.
// Requires 0 < eps < 1.
WeightProcess weight_process(double eps, double beta);

// Smallest error reachable with fluctuations bounded by c: e^{-beta c} / 2.
double weight_error_bound(double c, double beta);

// Weight process that pays w1 with probability lambda eps only. Requires 0 < eps < 1/2, 0 < lambda <= 1.
WeightProcess lambda_process(double eps, double lambda, double beta);

// One transition s_in -> s_out of a weight process with shift `work` and probability p(s_out, work | s_in).
struct WeightTransition {
  int s_in = 0;
  int s_out = 0;
  double work = 0.0;
  double prob = 0.0;
};

// max_{s'} |sum_{s, w} p(s', w | s) e^{beta (E_s' - E_s + w)} - 1|.
double weight_gibbs_residual(const EnergySpectrum& sys_in, const EnergySpectrum& sys_out, double beta,
                             const std::vector<WeightTransition>& transitions);

// Wit subchannels of the oscillator erasure on a degenerate qubit with delta = ln(2(1 - eps))/beta.
// Requires 0 <= eps < 1/2.
WitSubchannels oscillator_erasure_subchannels(double eps, double beta = 1.0);

// Closed-form oscillator statistics for battery input gamma |0> + (1 - gamma) |1>.
double oscillator_erasure_avg_closed_form(double eps, double gamma, double beta = 1.0);
double oscillator_erasure_var_closed_form(double eps, double gamma, double beta = 1.0);

// Weight-process statistics; eps = 0 is the limit of a point mass at -ln 2 / beta.
double weight_erasure_avg(double eps, double beta = 1.0);
double weight_erasure_var(double eps, double beta = 1.0);

struct ErasureStats {
  double eps = 0.0;
  double gamma = 0.0;
  double beta = 1.0;
  double delta = 0.0;
  double eps_tot = 0.0;
  int num_steps = 0;
  double tail = 0.0;  // ||R01^N||_1
  double avg_closed = 0.0;
  double var_closed = 0.0;
  double avg_direct = 0.0;
  double var_direct = 0.0;
  double f1_direct = 0.0;
  // |change| of the direct statistics when N doubles.
  double avg_doubling_change = 0.0;
  double var_doubling_change = 0.0;
  WorkDistribution work;
};

// Runs the completed finite-N extension on (uniform qubit) ⊗ (gamma |0> + (1 - gamma) |1>).
// N = 0 picks the smallest N with tail below 1e-16.
ErasureStats oscillator_erasure_stats(double eps, double gamma, int N, double beta = 1.0);

// Error floor under an exponential fluctuation budget c: max(0, 1/2 - c / (2 (1 - c))).
double exp_cost_weight_bound(double c);

// (e^{2 beta delta gamma} - 1) - (gamma/2) e^{-2 beta delta gamma} (1 - e^{beta delta} / (2 - e^{beta delta})).
// Throws PoleError when e^{beta delta} >= 2.
double exp_cost_closed_form(double eps, double gamma, double beta = 1.0);

struct ExpCostReport {
  int num_steps = 0;
  double tail = 0.0;
  double direct = 0.0;                 // sum_w p(w) (e^{beta |w - <w>|} - 1)
  std::optional<double> closed_form;   // absent at the pole
  double discrepancy = 0.0;            // closed_form - direct when present
};

ExpCostReport exp_cost_oscillator(double eps, double gamma, double beta, int N);

// Point-mass work demanded for a replacement channel onto `target`. Gibbs-stochasticity
// forces w = -E_s' - (ln q(s') + ln Z)/beta for every reachable s'; the demand is consistent
// only if all of these agree and every level of the output is populated.
struct PointMassCheck {
  std::vector<double> required_work;  // per output level; +inf where q(s') = 0
  double spread = 0.0;                // max - min of required_work
  bool consistent = false;
};

PointMassCheck point_mass_work_consistency(const DiagonalState& target, double beta);

}  // namespace thermo
