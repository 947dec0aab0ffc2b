#pragma once

#include "thermo/channels.hpp"
#include "thermo/spectra.hpp"

#include <optional>
#include <string>

namespace thermo {

// Oscillator-battery channel (levels 0..N, spacing delta) built from wit subchannels:
//   from 0:        R00 R01^i at level i < N, R01^N at N
//   from 0<k<N:    R10 at k-1, R00 R01^i R11 at k+i (i <= N-1-k), R01^(N-k) R11 at N
//   from N:        R10 at N-1, R11 at N
// Gibbs-preserving and trace-preserving at every finite N >= 2.
ThermalChannel extend_to_oscillator(const WitSubchannels& sub, int N);

// Largest |eigenvalue| estimate of |m| from 200 power-iteration steps.
double spectral_radius_estimate(const Matrix& m, int steps = 200);

// Operator 1-norm of R01^N: the mass that can still reach the top level.
double truncation_tail(const WitSubchannels& sub, int N);

// Smallest N >= 2 with ||R01^N||_1 below target, capped at `cap`.
int auto_size_levels(const WitSubchannels& sub, double target = 1e-12, int cap = 2000);

// delta (1^T (I - R01)^{-1} R11 x - 1); average work from any battery level k >= 1
// of the infinite oscillator. Throws NonConvergentSeries if rho(R01) >= 1 - 1e-10.
double closed_form_average_work(const WitSubchannels& sub, const DiagonalState& x);

// Same quantity for the finite map from level k: delta (sum_{j<=N-k} 1^T R01^j R11 x - 1).
double finite_average_work(const WitSubchannels& sub, const DiagonalState& x, int N, int k);

struct ExtensionReport {
  int num_steps = 0;
  double max_stochasticity_residual = 0.0;
  double max_gibbs_residual = 0.0;
  bool stochastic_ok = false;
  bool gibbs_ok = false;
  // Translation invariance with k_min = 1 on levels 0..N-1 (the top level is excluded).
  double eti_max_violation = 0.0;
  bool eti_ok = false;
  // Blocks (k, k-1), 1 <= k <= N, compared bitwise with R10.
  int block_mismatch_level = -1;  // first offending k, -1 if none
  double block_max_difference = 0.0;
  bool blocks_ok = false;
  bool passed = false;
};

// With `sub` the block audit compares against sub.r10, otherwise against block (1, 0).
ExtensionReport verify_extension(const ThermalChannel& channel, const WitSubchannels* sub = nullptr);

// Wit primitive taking rho ⊗ |1> to sigma ⊗ |0> at gap delta.
WitSubchannels formation_subchannels(const DiagonalState& rho, const DiagonalState& sigma, double beta, double delta);

struct DeterministicWork {
  double delta = 0.0;
  WitSubchannels subchannels;
  std::optional<ThermalChannel> channel;  // absent when delta = 0 (nothing to pay)
};

// Oscillator channel mapping rho ⊗ |k> to sigma ⊗ |k-1> for k >= 1, with the
// minimal formation gap as the level spacing.
DeterministicWork theorem3_deterministic_work(const DiagonalState& rho, const DiagonalState& sigma, double beta, int N);

}  // namespace thermo
