#include "thermo/instances.hpp"

#include "thermo/errors.hpp"
#include "thermo/spectra.hpp"

#include <algorithm>

namespace thermo {

EnergySpectrum random_spectrum(Rng& rng, int d, double max_energy) {
  std::vector<double> levels(static_cast<size_t>(d), 0.0);
  for (int i = 1; i < d; ++i) levels[static_cast<size_t>(i)] = rng.uniform(0.0, max_energy);
  return EnergySpectrum(std::move(levels), "system");
}

DiagonalState random_full_support_state(Rng& rng, const EnergySpectrum& spectrum) {
  // Floor every entry so no level is vanishingly rare.
  std::vector<double> p = rng.simplex(spectrum.size());
  const double floor = 1e-3;
  double total = 0.0;
  for (double& v : p) {
    v = floor + v;
    total += v;
  }
  for (double& v : p) v /= total;
  return DiagonalState(std::move(p), spectrum);
}

DiagonalState random_battery_state(Rng& rng, const EnergySpectrum& battery, int lo, int hi) {
  if (lo < 0 || hi >= battery.size() || lo > hi) throw Error(ErrorCode::IndexOutOfRange, "battery support range");
  const std::vector<double> q = rng.simplex(hi - lo + 1);
  std::vector<double> p(static_cast<size_t>(battery.size()), 0.0);
  std::copy(q.begin(), q.end(), p.begin() + lo);
  return DiagonalState(std::move(p), battery);
}

WitInstance random_wit_instance(std::uint64_t seed) {
  Rng rng(seed);
  const int d = rng.integer(2, 3);
  const EnergySpectrum sys = random_spectrum(rng, d, 2.0);
  const double delta = rng.uniform(0.2, 1.5);
  const double beta = rng.uniform(0.5, 2.0);
  const std::uint64_t mix_seed = static_cast<std::uint64_t>(rng.integer(0, 1 << 30));
  WitInstance out{random_wit_subchannels(sys, delta, beta, mix_seed, 20), random_full_support_state(rng, sys)};
  return out;
}

FeasibilityInstance random_feasibility_instance(std::uint64_t seed, int d_max) {
  if (d_max < 2) throw Error(ErrorCode::DomainError, "feasibility instances need d_max >= 2");
  Rng rng(seed);
  const int d = rng.integer(2, d_max);
  const EnergySpectrum spec = random_spectrum(rng, d, 3.0);
  const double beta = rng.uniform(0.3, 2.0);
  DiagonalState p(rng.simplex(d), spec);
  DiagonalState q(rng.simplex(d), spec);
  if (rng.uniform() < 0.5) {
    const EnergySpectrum trivial({0.0});
    const ThermalChannel mix = random_gibbs_stochastic(
        spec, trivial, beta, static_cast<std::uint64_t>(rng.integer(0, 1 << 30)), rng.integer(1, 8));
    q = output_system_marginal(mix, apply(mix, p, DiagonalState({1.0}, trivial)));
  }
  return {std::move(p), std::move(q), beta};
}

}  // namespace thermo
