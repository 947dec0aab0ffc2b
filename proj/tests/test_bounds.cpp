#include "doctest.h"

#include "oracles.hpp"
#include "thermo/batteries.hpp"
#include "thermo/bounds.hpp"
#include "thermo/construction.hpp"
#include "thermo/erasure.hpp"
#include "thermo/errors.hpp"
#include "thermo/instances.hpp"

#include <cmath>

using namespace thermo;

namespace {

const EnergySpectrum kFlat = EnergySpectrum::flat(2);

ThermalChannel wit_thermalization_extended(const EnergySpectrum& sys, double delta, int N) {
  const EnergySpectrum wit({0.0, delta});
  const Vector g = product_state(gibbs_state(sys, 1.0), gibbs_state(wit, 1.0));
  const ThermalChannel th(g * Eigen::RowVectorXd::Ones(g.size()), sys, sys, wit, 1.0);
  return extend_to_oscillator(subchannels_from_wit_channel(th), N);
}

}  // namespace

TEST_CASE("conditional Jarzynski on the identity channel equals Z") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const EnergySpectrum sys = random_spectrum(rng, rng.integer(1, 5), 3.0);
    const double beta = rng.uniform(0.3, 2.0);
    const ThermalChannel id = identity_channel(sys, EnergySpectrum::uniform(0.5, 4), beta);
    const DiagonalState s = random_full_support_state(rng, sys);
    CHECK(std::abs(conditional_jarzynski(id, s, rng.integer(0, 4)) - partition_function(sys, beta)) <
          1e-12 * partition_function(sys, beta));
  }
}

TEST_CASE("conditional Jarzynski on the zero-error erasure matches the oracle") {
  const double ln2 = std::log(2.0);
  for (int N : {4, 8, 16, 33}) {
    const ThermalChannel ch = extend_to_oscillator(oscillator_erasure_subchannels(0.0), N);
    const oracle::Dense ref = oracle::zero_error_erasure_map(N);
    const DiagonalState tau({0.5, 0.5}, kFlat);
    for (int k = 0; k <= N; ++k) {
      const double expected = oracle::conditional_exp_average(ref, {0.0, 0.0}, ch.battery().levels(), 1.0, k);
      CHECK(std::abs(conditional_jarzynski(ch, tau, k) - expected) < 1e-12 * expected);
    }
    // Frozen oracle values: 1 above the vacuum, N + 2 at the vacuum.
    CHECK(std::abs(conditional_jarzynski(ch, tau, 3) - 1.0) < 1e-12);
    CHECK(std::abs(conditional_jarzynski(ch, tau, 0) - (N + 2)) < 1e-12 * N);
    CHECK(std::abs(ch.battery()[1] - ln2) < 1e-15);
  }
}

TEST_CASE("zero-probability levels are skipped") {
  const ThermalChannel id = identity_channel(EnergySpectrum({0.0, 1.0}), EnergySpectrum::uniform(0.5, 3), 1.0);
  const DiagonalState s({1.0, 0.0}, EnergySpectrum({0.0, 1.0}));
  CHECK(conditional_jarzynski(id, s, 1) == doctest::Approx(1.0));
}

TEST_CASE("Jarzynski-type bound examples") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const WitInstance inst = random_wit_instance(seed);
    const ThermalChannel ch = extend_to_oscillator(inst.sub, 30);
    const Theorem1Report rep = theorem1_certify(ch, inst.sys, 1, 5);
    CHECK(rep.passed);
    CHECK(rep.rows.size() == 25);
    // Equilibrium input: the bound reads <e^{beta w}>_k <= (Z_S'/Z_S)(1 + e^{-beta delta_k}).
    const DiagonalState tau = gibbs_state(inst.sub.system, inst.sub.beta);
    const Theorem1Report eq = theorem1_certify(ch, tau, 1, 5);
    const double z = partition_function(inst.sub.system, inst.sub.beta);
    for (const Theorem1Row& row : eq.rows) {
      CHECK(row.lhs / z <= row.rhs / z + 1e-10);
    }
  }
  const ThermalChannel id = identity_channel(kFlat, EnergySpectrum::uniform(0.4, 8), 1.0);
  const Theorem1Report rep = theorem1_certify(id, DiagonalState({0.3, 0.7}, kFlat), 0, 0);
  CHECK(rep.passed);
  for (const Theorem1Row& row : rep.rows) CHECK(row.lhs / 2.0 == doctest::Approx(1.0));
}

TEST_CASE("Jarzynski-type bound requires translation invariance") {
  const ThermalChannel ch = extend_to_oscillator(oscillator_erasure_subchannels(0.1), 10);
  try {
    theorem1_certify(ch, DiagonalState({0.5, 0.5}, kFlat), 0, 2);
    FAIL("expected ETIViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ETIViolated);
  }
}

TEST_CASE("corrected second law examples") {
  const ThermalChannel id = identity_channel(kFlat, EnergySpectrum::uniform(0.4, 8), 1.0);
  const DiagonalState s({0.3, 0.7}, kFlat);
  const SecondLawReport idr = theorem2_bound(id, s, DiagonalState::basis(id.battery(), 4), 1);
  CHECK(idr.avg_work == 0.0);
  CHECK(std::abs(idr.delta_F) < 1e-15);
  CHECK(idr.slack >= 0.0);

  const EnergySpectrum sys({0.0, 0.8});
  const ThermalChannel ch = wit_thermalization_extended(sys, 0.5, 60);
  const SecondLawReport r5 = theorem2_bound(ch, DiagonalState({0.6, 0.4}, sys), DiagonalState::basis(ch.battery(), 5), 1);
  CHECK(r5.passed);
  CHECK(r5.slack > 0.0);
  CHECK(r5.A_term == 0.0);

  // Far above the vacuum both corrections are tiny.
  const SecondLawReport far =
      theorem2_bound(ch, DiagonalState({0.6, 0.4}, sys), DiagonalState::basis(ch.battery(), 40), 1);
  CHECK(far.A_term == 0.0);
  CHECK(far.B_term_appendix <= std::log1p(far.eta_S * std::exp(-40 * 0.5)) + 1e-15);
  CHECK(far.B_term_main <= far.B_term_appendix);
  CHECK(far.avg_work <= -far.delta_F + 1e-6);
}

TEST_CASE("property: second-law slack is non-negative") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const WitInstance inst = random_wit_instance(seed);
    const ThermalChannel ch = extend_to_oscillator(inst.sub, 30);
    Rng rng(seed + 4000);
    const int lo = seed % 2 == 0 ? 0 : rng.integer(1, 10);
    const DiagonalState bat = random_battery_state(rng, ch.battery(), lo, lo + rng.integer(0, 8));
    CHECK(theorem2_bound(ch, inst.sys, bat, 1).passed);
  }
}

TEST_CASE("eta derivative") {
  const EnergySpectrum single({0.7});
  CHECK(std::exp(log_eta(single, 1.3, 0)) == doctest::Approx(1.0));
  CHECK(eta_derivative(single, 1.3, 0) == doctest::Approx(0.0));

  const EnergySpectrum osc = EnergySpectrum::uniform(std::log(2.0), 80);
  const double z = partition_function(osc, 1.0);
  CHECK(eta_derivative(osc, 1.0, 0) == doctest::Approx(-z * gibbs_mean_energy(osc, 1.0)).epsilon(1e-13));

  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const EnergySpectrum b = EnergySpectrum::uniform(rng.uniform(0.1, 1.0), rng.integer(1, 30));
    const double beta = rng.uniform(0.3, 2.0);
    const int k = rng.integer(0, b.size() - 1);
    const double h = 1e-5;
    const double fd = (std::exp(log_eta(b, beta + h, k)) - std::exp(log_eta(b, beta - h, k))) / (2 * h);
    CHECK(std::abs(eta_derivative(b, beta, k) - fd) <= 1e-6 * std::abs(fd) + 1e-12);
  }
}

TEST_CASE("threshold correction term") {
  const EnergySpectrum bat = EnergySpectrum::uniform(0.1, 1000);
  const DiagonalState high = DiagonalState::basis(bat, 900);
  const SystemParams qubit{2, 0.0};
  CHECK(corollary1_correction(30.0, high, qubit, 1.0, 0.1, 5.0) ==
        doctest::Approx(2.0 * std::exp(-25.0)).epsilon(1e-13));
  CHECK_THROWS_AS(corollary1_correction(5.0, high, qubit, 1.0, 0.1, 5.0), Error);

  const DiagonalState all_low = DiagonalState::basis(bat, 10);
  const double bd = 0.1;
  const double h = std::exp(-bd) * (1.0 + bd * std::exp(5.0) / std::pow(1.0 - std::exp(-bd), 2));
  CHECK(corollary1_correction(30.0, all_low, qubit, 1.0, 0.1, 5.0) ==
        doctest::Approx(2.0 * h + std::log(2.0) + 2.0 * std::exp(-25.0)).epsilon(1e-12));
}

TEST_CASE("gaussian battery profile") {
  const EnergySpectrum bat = EnergySpectrum::uniform(0.1, 1000);
  const DiagonalState g = gaussian_battery_state(bat, 50.0, 1.0);
  CHECK(std::abs(mean_energy(g) - 50.0) < 1e-9);
  double second = 0.0;
  for (int k = 0; k < g.size(); ++k) second += g[k] * (bat[k] - 50.0) * (bat[k] - 50.0);
  CHECK(std::abs(second - 1.0) < 1e-6);
}
