#pragma once

#include "thermo/channels.hpp"
#include "thermo/random.hpp"
#include "thermo/spectra.hpp"

#include <cstdint>

namespace thermo {

// Seeded random problem instances shared by the certification sweeps.
struct WitInstance {
  WitSubchannels sub;
  DiagonalState sys;  // full-support system state
};

// System with 2 or 3 levels in [0, 2], gap in [0.2, 1.5], beta in [0.5, 2], 20 mixes.
WitInstance random_wit_instance(std::uint64_t seed);

// Spectrum with `d` levels: 0 followed by uniform draws in [0, max_energy].
EnergySpectrum random_spectrum(Rng& rng, int d, double max_energy);

// Full-support random state on `spectrum`.
DiagonalState random_full_support_state(Rng& rng, const EnergySpectrum& spectrum);

// Random battery populations on levels lo..hi (inclusive) of `battery`.
DiagonalState random_battery_state(Rng& rng, const EnergySpectrum& battery, int lo, int hi);

// Pair of states on one random spectrum with d in [2, d_max]. About half the targets are
// images of `p` under a random Gibbs-stochastic map, so both verdicts occur.
struct FeasibilityInstance {
  DiagonalState p;
  DiagonalState q;
  double beta = 1.0;
};

FeasibilityInstance random_feasibility_instance(std::uint64_t seed, int d_max = 5);

}  // namespace thermo
