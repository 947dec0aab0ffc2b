#include "doctest.h"

#include "thermo/errors.hpp"
#include "thermo/instances.hpp"
#include "thermo/random.hpp"
#include "thermo/spectra.hpp"

#include <cmath>

using namespace thermo;

namespace {
const double kLn2 = std::log(2.0);
}

TEST_CASE("spectrum construction validates levels") {
  CHECK_THROWS_AS(EnergySpectrum(std::vector<double>{}), Error);
  CHECK_THROWS_AS(EnergySpectrum({0.0, std::nan("")}), Error);
  const EnergySpectrum osc = EnergySpectrum::uniform(0.5, 4);
  CHECK(osc.size() == 5);
  CHECK(osc[4] == doctest::Approx(2.0));
  REQUIRE(osc.uniform_spacing().has_value());
  CHECK(*osc.uniform_spacing() == doctest::Approx(0.5));
  CHECK_FALSE(EnergySpectrum({0.0, 1.0, 3.0}).uniform_spacing().has_value());
}

TEST_CASE("partition function examples") {
  CHECK(partition_function(EnergySpectrum::flat(2), 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(partition_function(EnergySpectrum({0.0, kLn2}), 1.0) == doctest::Approx(1.5).epsilon(1e-15));
  // Geometric series sum_k 2^{-k} approaches 2.
  const double z = partition_function(EnergySpectrum::uniform(kLn2, 60), 1.0);
  double partial = 0.0;
  for (int k = 0; k <= 60; ++k) partial += std::ldexp(1.0, -k);
  CHECK(z == doctest::Approx(partial).epsilon(1e-14));
  CHECK(std::abs(z - 2.0) < 1e-15 * 8);
}

TEST_CASE("overflow guard") {
  CHECK_THROWS_AS(partition_function(EnergySpectrum({0.0, 800.0}), 1.0), Error);
  try {
    partition_function(EnergySpectrum({0.0, 800.0}), 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverflowRisk);
  }
  CHECK_NOTHROW(partition_function(EnergySpectrum({0.0, 700.0}), 1.0));
}

TEST_CASE("gibbs state examples") {
  const DiagonalState flat = gibbs_state(EnergySpectrum::flat(2), 1.0);
  CHECK(flat[0] == 0.5);
  CHECK(flat[1] == 0.5);
  const DiagonalState two = gibbs_state(EnergySpectrum({0.0, kLn2}), 1.0);
  CHECK(two[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(two[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const DiagonalState osc = gibbs_state(EnergySpectrum::uniform(kLn2, 20), 1.0);
  for (int k = 1; k <= 20; ++k) CHECK(osc[k] / osc[k - 1] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("free energy examples") {
  const EnergySpectrum flat = EnergySpectrum::flat(2);
  CHECK(free_energy(DiagonalState({0.5, 0.5}, flat), 1.0) == doctest::Approx(-kLn2).epsilon(1e-15));
  CHECK(free_energy(DiagonalState({1.0, 0.0}, flat), 1.0) == 0.0);
  const EnergySpectrum two({0.0, kLn2});
  CHECK(free_energy(gibbs_state(two, 1.0), 1.0) == doctest::Approx(-std::log(1.5)).epsilon(1e-14));
}

TEST_CASE("fine-grained free energy examples") {
  const EnergySpectrum flat = EnergySpectrum::flat(2);
  CHECK(fine_grained_free_energy(DiagonalState({0.5, 0.5}, flat), 1.0, 0) == doctest::Approx(-kLn2));
  CHECK(fine_grained_free_energy(DiagonalState({0.9, 0.1}, flat), 1.0, 1) ==
        doctest::Approx(-2.302585092994046).epsilon(1e-15));
  const EnergySpectrum two({0.0, 0.7});
  const DiagonalState tau = gibbs_state(two, 1.3);
  for (int s = 0; s < 2; ++s) {
    CHECK(fine_grained_free_energy(tau, 1.3, s) ==
          doctest::Approx(-log_partition_function(two, 1.3) / 1.3).epsilon(1e-14));
  }
  try {
    fine_grained_free_energy(DiagonalState({1.0, 0.0}, flat), 1.0, 1);
    FAIL("expected ZeroProbability");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroProbability);
  }
}

TEST_CASE("d_max examples") {
  const EnergySpectrum flat = EnergySpectrum::flat(2);
  const DiagonalState tau({0.5, 0.5}, flat);
  CHECK(d_max(tau, tau) == 0.0);
  CHECK(d_max(DiagonalState({1.0, 0.0}, flat), tau) == doctest::Approx(kLn2));
  CHECK(d_max(DiagonalState({0.75, 0.25}, flat), tau) == doctest::Approx(std::log(1.5)));
  try {
    d_max(tau, DiagonalState({1.0, 0.0}, flat));
    FAIL("expected SupportMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SupportMismatch);
  }
}

TEST_CASE("state validation") {
  const EnergySpectrum flat = EnergySpectrum::flat(2);
  CHECK_THROWS_AS(DiagonalState({0.5}, flat), Error);
  CHECK_THROWS_AS(DiagonalState({1.2, -0.2}, flat), Error);
  CHECK_THROWS_AS(DiagonalState({0.5, 0.4}, flat), Error);
  CHECK_NOTHROW(DiagonalState({0.5, 0.5 + 5e-13}, flat));
}

TEST_CASE("binary entropy uses natural logs") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(kLn2).epsilon(1e-15));
  CHECK(binary_entropy(0.25) == doctest::Approx(0.5623351446188083).epsilon(1e-15));
}

TEST_CASE("property: fine-grained free energies average to the free energy") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = rng.integer(1, 6);
    const EnergySpectrum spec = random_spectrum(rng, d, 4.0);
    const double beta = rng.uniform(0.2, 3.0);
    const DiagonalState state = random_full_support_state(rng, spec);
    double avg = 0.0;
    for (int s = 0; s < d; ++s) avg += state[s] * fine_grained_free_energy(state, beta, s);
    CHECK(std::abs(avg - free_energy(state, beta)) < 1e-12);
  }
}

TEST_CASE("property: Gibbs free energy equals -ln Z / beta") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const EnergySpectrum spec = random_spectrum(rng, rng.integer(1, 8), 5.0);
    const double beta = rng.uniform(0.1, 4.0);
    CHECK(std::abs(free_energy(gibbs_state(spec, beta), beta) + log_partition_function(spec, beta) / beta) < 1e-12);
  }
}

TEST_CASE("property: d_max to Gibbs is non-negative and vanishes only at Gibbs") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const EnergySpectrum spec = random_spectrum(rng, rng.integer(2, 6), 3.0);
    const double beta = rng.uniform(0.2, 2.0);
    const DiagonalState tau = gibbs_state(spec, beta);
    const DiagonalState rho = random_full_support_state(rng, spec);
    CHECK(d_max(rho, tau) > 0.0);
    CHECK(std::abs(d_max(tau, tau)) < 1e-14);
  }
}

TEST_CASE("property: Gibbs populations are sorted when levels are") {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> levels = random_spectrum(rng, rng.integer(2, 8), 5.0).levels();
    std::sort(levels.begin(), levels.end());
    const DiagonalState tau = gibbs_state(EnergySpectrum(levels), rng.uniform(0.1, 3.0));
    for (int i = 1; i < tau.size(); ++i) CHECK(tau[i] <= tau[i - 1]);
  }
}
