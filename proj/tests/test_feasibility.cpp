#include "doctest.h"

#include "thermo/channels.hpp"
#include "thermo/errors.hpp"
#include "thermo/feasibility.hpp"
#include "thermo/instances.hpp"
#include "thermo/simplex.hpp"

#include <cmath>

using namespace thermo;

namespace {

const EnergySpectrum kFlat = EnergySpectrum::flat(2);

DiagonalState qubit(double p0) { return DiagonalState({p0, 1.0 - p0}, kFlat); }

// Random instance whose target is reachable half of the time.
std::pair<DiagonalState, DiagonalState> random_pair(Rng& rng, double& beta) {
  const int d = rng.integer(2, 5);
  const EnergySpectrum spec = random_spectrum(rng, d, 3.0);
  beta = rng.uniform(0.3, 2.0);
  DiagonalState p(rng.simplex(d), spec);
  DiagonalState q(rng.simplex(d), spec);
  if (rng.uniform() < 0.5) {
    const EnergySpectrum trivial({0.0});
    const ThermalChannel mix = random_gibbs_stochastic(spec, trivial, beta, rng.integer(0, 1 << 20), rng.integer(1, 8));
    q = output_system_marginal(mix, apply(mix, p, DiagonalState({1.0}, trivial)));
  }
  return {p, q};
}

}  // namespace

TEST_CASE("thermo curve examples") {
  const ThermoCurve gibbs = thermo_curve(qubit(0.5), 1.0);
  REQUIRE(gibbs.points.size() == 3);
  CHECK(gibbs.points[1].second == doctest::Approx(0.5));
  CHECK(gibbs.at(1.0) == doctest::Approx(0.5));

  const EnergySpectrum two({0.0, 1.0});
  const ThermoCurve pure = thermo_curve(DiagonalState({1.0, 0.0}, two), 1.0);
  CHECK(pure.points[1].first == doctest::Approx(1.0));
  CHECK(pure.points[1].second == doctest::Approx(1.0));
  CHECK(pure.points.back().first == doctest::Approx(1.0 + std::exp(-1.0)));
  CHECK(pure.points.back().second == doctest::Approx(1.0));

  const ThermoCurve c = thermo_curve(qubit(0.7), 1.0);
  REQUIRE(c.points.size() == 3);
  CHECK(c.points[0] == std::pair<double, double>{0.0, 0.0});
  CHECK(c.points[1].first == doctest::Approx(1.0));
  CHECK(c.points[1].second == doctest::Approx(0.7));
  CHECK(c.points[2].first == doctest::Approx(2.0));
  CHECK(c.points[2].second == doctest::Approx(1.0));
}

TEST_CASE("tie order does not change the curve") {
  const ThermoCurve c = thermo_curve(qubit(0.5), 1.0);
  CHECK(c.order == std::vector<int>{0, 1});
}

TEST_CASE("thermo_majorizes examples") {
  CHECK(thermo_majorizes(qubit(1.0), qubit(0.5), 1.0));
  CHECK_FALSE(thermo_majorizes(qubit(0.7), qubit(0.9), 1.0));
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const EnergySpectrum spec = random_spectrum(rng, rng.integer(2, 5), 3.0);
    const double beta = rng.uniform(0.2, 2.0);
    CHECK(thermo_majorizes(DiagonalState(rng.simplex(spec.size()), spec), gibbs_state(spec, beta), beta));
  }
  CHECK_THROWS_AS(thermo_majorizes(qubit(0.5), DiagonalState({0.5, 0.5}, EnergySpectrum({0.0, 1.0})), 1.0), Error);
}

TEST_CASE("lp transport examples") {
  CHECK(lp_feasible_transport(qubit(0.3), qubit(0.3), 1.0));
  CHECK(lp_feasible_transport(qubit(1.0), qubit(0.5), 1.0));
  CHECK_FALSE(lp_feasible_transport(qubit(0.5), qubit(1.0), 1.0));
  const auto r = solve_gibbs_transport(qubit(1.0), qubit(0.5), 1.0);
  REQUIRE(r.has_value());
  CHECK(std::abs((*r)(0, 0) * 1.0 + (*r)(0, 1) * 0.0 - 0.5) < 1e-9);
}

TEST_CASE("phase-one simplex on small systems") {
  Matrix a(2, 3);
  a << 1, 1, 1, 1, -1, 0;
  Vector b(2);
  b << 1, 0;
  const PhaseOneResult ok = phase_one_feasibility(a, b);
  CHECK(ok.feasible);
  CHECK(ok.max_residual < 1e-12);
  Matrix c(2, 2);
  c << 1, 1, 1, 1;
  Vector e(2);
  e << 1, 2;
  CHECK_FALSE(phase_one_feasibility(c, e).feasible);
}

TEST_CASE("property: curve and LP oracles agree") {
  Rng rng(32);
  int reachable = 0;
  for (int trial = 0; trial < 300; ++trial) {
    double beta = 1.0;
    const auto [p, q] = random_pair(rng, beta);
    const bool curve = thermo_majorizes(p, q, beta);
    CHECK(curve == lp_feasible_transport(p, q, beta));
    reachable += curve;
  }
  CHECK(reachable > 50);
  CHECK(reachable < 250);
}

TEST_CASE("property: thermomajorization is transitive") {
  Rng rng(33);
  int chains = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int d = rng.integer(2, 4);
    const EnergySpectrum spec = random_spectrum(rng, d, 2.0);
    const double beta = rng.uniform(0.3, 2.0);
    const DiagonalState a(rng.simplex(d), spec), b(rng.simplex(d), spec), c(rng.simplex(d), spec);
    if (thermo_majorizes(a, b, beta, 0.0) && thermo_majorizes(b, c, beta, 0.0)) {
      ++chains;
      CHECK(thermo_majorizes(a, c, beta));
    }
  }
  CHECK(chains > 0);
}

TEST_CASE("min formation gap examples") {
  const double eps = 0.25;
  CHECK(std::abs(min_formation_gap(qubit(0.5), qubit(1.0 - eps), 1.0) - std::log(1.5)) < 1e-10);
  CHECK(min_formation_gap(qubit(0.5), qubit(0.5), 1.0) == 0.0);
  CHECK(std::abs(min_formation_gap(qubit(0.5), qubit(1.0), 1.0) - std::log(2.0)) < 1e-10);
}

TEST_CASE("property: formation gap from Gibbs equals d_max / beta") {
  Rng rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const EnergySpectrum spec = random_spectrum(rng, rng.integer(2, 4), 2.0);
    const double beta = rng.uniform(0.3, 2.0);
    const DiagonalState tau = gibbs_state(spec, beta);
    const DiagonalState sigma = random_full_support_state(rng, spec);
    CHECK(std::abs(min_formation_gap(tau, sigma, beta) - d_max(sigma, tau) / beta) < 1e-8);
  }
}

TEST_CASE("wit formation pair layout") {
  const auto [p, q] = wit_formation_pair(qubit(0.4), qubit(0.9), 0.5);
  CHECK(p.size() == 4);
  CHECK(p[2] == doctest::Approx(0.4));
  CHECK(q[0] == doctest::Approx(0.9));
  CHECK(p.spectrum()[3] == doctest::Approx(0.5));
}
