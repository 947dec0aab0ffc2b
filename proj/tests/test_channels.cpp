#include "doctest.h"

#include "oracles.hpp"
#include "thermo/channels.hpp"
#include "thermo/construction.hpp"
#include "thermo/erasure.hpp"
#include "thermo/errors.hpp"
#include "thermo/instances.hpp"

#include <cmath>
#include <sstream>

using namespace thermo;

namespace {

ThermalChannel from_dense(const oracle::Dense& r, const EnergySpectrum& sys, const EnergySpectrum& bat, double beta) {
  Matrix m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.size()));
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r.size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r[i][j];
  return ThermalChannel(std::move(m), sys, sys, bat, beta);
}

}  // namespace

TEST_CASE("identity channel is valid and translation invariant") {
  const EnergySpectrum sys({0.0, 0.3, 1.1});
  const EnergySpectrum bat = EnergySpectrum::uniform(0.4, 6);
  const ThermalChannel id = identity_channel(sys, bat, 1.2);
  const ValidationReport v = validate(id);
  CHECK(v.valid);
  CHECK(v.max_stochasticity_residual == 0.0);
  CHECK(v.max_gibbs_residual == 0.0);
  CHECK(check_eti(id, 0).holds);
  CHECK(extract_subchannels(id, 2, 2) == Matrix::Identity(3, 3));
  CHECK(extract_subchannels(id, 2, 3).isZero(0.0));
}

TEST_CASE("validate rejects a column summing to 0.9") {
  const EnergySpectrum sys = EnergySpectrum::flat(2);
  const EnergySpectrum bat({0.0});
  Matrix r = Matrix::Identity(2, 2);
  r(0, 0) = 0.9;
  const ValidationReport v = validate(ThermalChannel(r, sys, sys, bat, 1.0));
  CHECK_FALSE(v.valid);
  CHECK(v.max_stochasticity_residual == doctest::Approx(0.1));
  CHECK_THROWS_AS(ThermalChannel(Matrix::Identity(3, 3), sys, sys, bat, 1.0), Error);
}

TEST_CASE("zero-error erasure map from the oracle is a valid channel") {
  for (int N : {2, 5, 17}) {
    const oracle::Dense r = oracle::zero_error_erasure_map(N);
    const EnergySpectrum bat = EnergySpectrum::uniform(std::log(2.0), N);
    const ThermalChannel ch = from_dense(r, EnergySpectrum::flat(2), bat, 1.0);
    const ValidationReport v = validate(ch);
    CHECK(v.valid);
    const oracle::Residuals ref = oracle::channel_residuals(r, {0.0, 0.0}, bat.levels(), 1.0);
    CHECK(std::abs(ref.gibbs - v.max_gibbs_residual) < 1e-14);
    CHECK(ref.gibbs < 1e-12);
    // Vacuum row breaks invariance, all levels above it keep it.
    CHECK_FALSE(check_eti(ch, 0, N - 1).holds);
    CHECK(check_eti(ch, 1, N - 1).holds);
  }
}

TEST_CASE("apply examples") {
  const EnergySpectrum sys({0.0, 0.5});
  const EnergySpectrum bat = EnergySpectrum::uniform(0.3, 5);
  const DiagonalState s({0.2, 0.8}, sys);
  const DiagonalState b = DiagonalState::basis(bat, 3);
  const Vector in = product_state(s, b);
  CHECK(apply(identity_channel(sys, bat, 1.0), in) == in);

  const ThermalChannel ch = random_gibbs_stochastic(sys, bat, 1.0, 5, 40);
  const Vector out = apply(ch, gibbs_state(sys, 1.0), gibbs_state(bat, 1.0));
  const Vector expected = product_state(gibbs_state(sys, 1.0), gibbs_state(bat, 1.0));
  CHECK((out - expected).cwiseAbs().maxCoeff() < 1e-10);

  // Zero-error erasure takes the uniform qubit at level 3 to |0> at level 2.
  const ThermalChannel erase = extend_to_oscillator(oscillator_erasure_subchannels(0.0), 8);
  const Vector joint = apply(erase, DiagonalState({0.5, 0.5}, EnergySpectrum::flat(2)),
                             DiagonalState::basis(erase.battery(), 3));
  Vector target = Vector::Zero(joint.size());
  target(erase.out_index(0, 2)) = 1.0;
  CHECK(joint == target);
}

TEST_CASE("extract_subchannels reads erasure blocks") {
  const double eps = 0.1;
  const WitSubchannels sub = oscillator_erasure_subchannels(eps);
  const ThermalChannel ch = extend_to_oscillator(sub, 6);
  const Matrix r10 = extract_subchannels(ch, 1, 0);
  CHECK(r10(0, 0) == doctest::Approx(1.0 - eps));
  CHECK(r10(0, 1) == doctest::Approx(1.0 - eps));
  CHECK(r10(1, 0) == doctest::Approx(eps));
  CHECK(r10(1, 1) == doctest::Approx(eps));
  CHECK_THROWS_AS(extract_subchannels(ch, 7, 0), Error);
}

TEST_CASE("random_gibbs_stochastic contract") {
  const EnergySpectrum sys({0.0, 0.7, 1.5});
  const EnergySpectrum bat = EnergySpectrum::uniform(0.5, 4);
  const ThermalChannel none = random_gibbs_stochastic(sys, bat, 1.0, 3, 0);
  CHECK(none.matrix() == identity_channel(sys, bat, 1.0).matrix());
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ThermalChannel ch = random_gibbs_stochastic(sys, bat, 0.8, seed, 60);
    CHECK(validate(ch).valid);
    CHECK(random_gibbs_stochastic(sys, bat, 0.8, seed, 60).matrix() == ch.matrix());
  }
}

TEST_CASE("property: composition of valid channels is valid") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const EnergySpectrum sys = random_spectrum(rng, rng.integer(1, 3), 2.0);
    const EnergySpectrum bat = EnergySpectrum::uniform(rng.uniform(0.2, 1.0), rng.integer(1, 4));
    const double beta = rng.uniform(0.3, 2.0);
    const ThermalChannel a = random_gibbs_stochastic(sys, bat, beta, rng.integer(0, 1 << 20), 30);
    const ThermalChannel b = random_gibbs_stochastic(sys, bat, beta, rng.integer(0, 1 << 20), 30);
    CHECK(validate(compose(b, a)).valid);
  }
}

TEST_CASE("property: ETI verdict is monotone in k_min") {
  Rng rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const WitInstance inst = random_wit_instance(static_cast<std::uint64_t>(trial));
    const ThermalChannel ch = extend_to_oscillator(inst.sub, rng.integer(3, 12));
    const int N = ch.battery_levels() - 1;
    bool seen = false;
    for (int k_min = 0; k_min <= N - 1; ++k_min) {
      const bool holds = check_eti(ch, k_min, N - 1).holds;
      if (seen) CHECK(holds);
      seen = seen || holds;
    }
    CHECK(seen);
  }
}

TEST_CASE("ETI reports both windows and needs an evenly spaced battery") {
  const EnergySpectrum sys = EnergySpectrum::flat(2);
  const ThermalChannel ch = extend_to_oscillator(oscillator_erasure_subchannels(0.2), 10);
  const ETIReport main = check_eti(ch, 1, 9);
  const ETIReport app = check_eti(ch, 1, 9, 1e-14, EtiWindow::Appendix);
  CHECK(main.holds_main);
  // The appendix window lets the shifted input reach the vacuum column, where the completion differs.
  CHECK_FALSE(app.holds_appendix);
  CHECK(app.worst_appendix.k_in + app.worst_appendix.shift == 0);
  CHECK(app.window == EtiWindow::Appendix);
  const ThermalChannel uneven = identity_channel(sys, EnergySpectrum({0.0, 1.0, 3.0}), 1.0);
  try {
    check_eti(uneven, 0);
    FAIL("expected NonUniformBattery");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonUniformBattery);
  }
}

TEST_CASE("property: blocks tile the matrix exactly") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const WitInstance inst = random_wit_instance(seed);
    const ThermalChannel ch = extend_to_oscillator(inst.sub, 7);
    const int d = ch.d_in();
    Matrix rebuilt(ch.matrix().rows(), ch.matrix().cols());
    for (int k = 0; k < ch.battery_levels(); ++k)
      for (int kp = 0; kp < ch.battery_levels(); ++kp)
        rebuilt.block(kp * d, k * d, d, d) = extract_subchannels(ch, k, kp);
    CHECK(rebuilt == ch.matrix());
  }
}

TEST_CASE("channel and subchannel text round trip is exact") {
  const WitInstance inst = random_wit_instance(99);
  const ThermalChannel ch = extend_to_oscillator(inst.sub, 5);
  std::stringstream ss;
  write_channel(ss, ch);
  const ThermalChannel back = read_channel(ss);
  CHECK(back.matrix() == ch.matrix());
  CHECK(back.battery() == ch.battery());
  CHECK(back.sys_in() == ch.sys_in());
  CHECK(back.beta() == ch.beta());

  std::stringstream ss2;
  write_subchannels(ss2, inst.sub);
  const WitSubchannels sub = read_subchannels(ss2);
  CHECK(sub.r00 == inst.sub.r00);
  CHECK(sub.r11 == inst.sub.r11);
  CHECK(sub.delta == inst.sub.delta);

  std::stringstream bad("2 2 1 1.0\n1 0\n0 x\n");
  try {
    read_channel(bad);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}
