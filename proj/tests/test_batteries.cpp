#include "doctest.h"

#include "thermo/batteries.hpp"
#include "thermo/construction.hpp"
#include "thermo/erasure.hpp"
#include "thermo/errors.hpp"
#include "thermo/instances.hpp"

#include <cmath>
#include <sstream>

using namespace thermo;

namespace {

const double kLn2 = std::log(2.0);

// Joint thermalization of a system and a wit: every input goes to the Gibbs product.
ThermalChannel wit_thermalization(const EnergySpectrum& sys, double delta, double beta) {
  const EnergySpectrum wit({0.0, delta}, "wit");
  const Vector g = product_state(gibbs_state(sys, beta), gibbs_state(wit, beta));
  Matrix r = g * Eigen::RowVectorXd::Ones(g.size());
  return ThermalChannel(std::move(r), sys, sys, wit, beta);
}

}  // namespace

TEST_CASE("battery models") {
  CHECK(BatteryModel::wit(0.5).spectrum().levels() == std::vector<double>{0.0, 0.5});
  CHECK(BatteryModel::oscillator(3, 0.5).spectrum().size() == 4);
  const BatteryModel w = BatteryModel::weight_point_masses({1.0, -0.5, 1.0 + 1e-14});
  CHECK(w.spectrum().size() == 2);
  CHECK_THROWS_AS(BatteryModel::wit(0.0), Error);
}

TEST_CASE("work distribution examples") {
  const EnergySpectrum sys({0.0, 0.4});
  const EnergySpectrum bat = EnergySpectrum::uniform(0.3, 4);
  const WorkDistribution id =
      work_distribution(identity_channel(sys, bat, 1.0), gibbs_state(sys, 1.0), DiagonalState::basis(bat, 2));
  CHECK(id.size() == 1);
  CHECK(id.prob_of(0.0) == 1.0);

  const ThermalChannel th = wit_thermalization(sys, kLn2, 1.0);
  const WorkDistribution wd = work_distribution(th, gibbs_state(sys, 1.0), DiagonalState::basis(th.battery(), 0));
  CHECK(wd.prob_of(kLn2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(wd.prob_of(0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(average_work(wd) == doctest::Approx(kLn2 / 3.0).epsilon(1e-14));

  const ThermalChannel erase = extend_to_oscillator(oscillator_erasure_subchannels(0.0), 10);
  for (int k = 1; k <= 10; ++k) {
    const WorkDistribution e =
        work_distribution(erase, DiagonalState({0.5, 0.5}, EnergySpectrum::flat(2)), DiagonalState::basis(erase.battery(), k));
    CHECK(e.size() == 1);
    CHECK(e.prob_of(-kLn2) == 1.0);
  }
}

TEST_CASE("moments and measures") {
  CHECK(average_work(WorkDistribution::point_mass(0.0)) == 0.0);
  CHECK(variance(WorkDistribution::point_mass(-2.0)) == 0.0);
  CHECK(variance(WorkDistribution({{-1.0, 0.5}, {1.0, 0.5}})) == 1.0);
  CHECK(f1_measure(WorkDistribution::point_mass(3.0)) == 0.0);
  const WorkDistribution skew({{-1.0, 0.75}, {3.0, 0.25}});
  CHECK(average_work(skew) == 0.0);
  CHECK(f1_measure(skew) == 3.0);
  CHECK_THROWS_AS(WorkDistribution({{0.0, 0.5}}), Error);
}

TEST_CASE("general cost") {
  const WorkDistribution wd({{-0.2, 0.3}, {0.4, 0.5}, {1.1, 0.2}});
  CHECK(general_cost(wd, square_cost()) == doctest::Approx(variance(wd)).epsilon(1e-14));
  CHECK(general_cost(WorkDistribution::point_mass(1.7), exp_cost()) == 0.0);
  const double f1 = f1_measure(wd);
  CHECK(general_cost(wd, absolute_window_cost(f1 + 1e-9)) == 0.0);
  CHECK(general_cost(wd, absolute_window_cost(f1 - 1e-9)) > 1e299 * 0.1);
  CHECK_THROWS_AS(CostFunction([](double x) { return x + 1.0; }, "shifted"), Error);
}

TEST_CASE("variance floor examples") {
  const WorkDistribution wd({{-0.5, 0.6}, {0.3, 0.4}});
  CHECK(theorem4_check(wd, 0.0).passed);
  const double eps = 0.01, gamma = 0.05;
  const double avg = oscillator_erasure_avg_closed_form(eps, gamma);
  const double var = oscillator_erasure_var_closed_form(eps, gamma);
  CHECK(avg < 0.0);
  CHECK(var >= gamma * avg * avg);
  const Theorem4Report point = theorem4_check(WorkDistribution::point_mass(-1.0), 0.3);
  CHECK_FALSE(point.passed);
  CHECK(point.margin == doctest::Approx(-0.3));
  try {
    theorem4_check(WorkDistribution::point_mass(0.5), 0.3);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionViolated);
  }
}

TEST_CASE("property: average work matches battery energy change") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const WitInstance inst = random_wit_instance(seed);
    const ThermalChannel ch = extend_to_oscillator(inst.sub, 12);
    Rng rng(seed + 500);
    const DiagonalState bat = random_battery_state(rng, ch.battery(), 0, 6);
    const WorkDistribution wd = work_distribution(ch, inst.sys, bat);
    const DiagonalState after = output_battery_marginal(ch, apply(ch, inst.sys, bat));
    CHECK(std::abs(average_work(wd) - (mean_energy(after) - mean_energy(bat))) < 1e-12);
    double total = 0.0;
    for (double p : wd.probs()) total += p;
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("property: interior inputs give the same work distribution") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const WitInstance inst = random_wit_instance(seed);
    const WitSubchannels sub = inst.sub;
    const ThermalChannel ch = extend_to_oscillator(sub, 60);
    const WorkDistribution ref = work_distribution(ch, inst.sys, DiagonalState::basis(ch.battery(), 1));
    for (int k : {2, 3, 5}) {
      const WorkDistribution wd = work_distribution(ch, inst.sys, DiagonalState::basis(ch.battery(), k));
      // Only the mass that reaches the top level can differ.
      const double tail = truncation_tail(sub, 60 - k);
      for (int i = 0; i < ref.size(); ++i) {
        const double w = ref.support()[static_cast<size_t>(i)];
        if (w < 60 * sub.delta - k * sub.delta - 1e-9) CHECK(std::abs(wd.prob_of(w) - ref.probs()[static_cast<size_t>(i)]) < 1e-12 + tail);
      }
    }
  }
}

TEST_CASE("property: variance floor holds for sampled protocols") {
  int used = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const WitInstance inst = random_wit_instance(seed);
    const ThermalChannel ch = extend_to_oscillator(inst.sub, 40);
    Rng rng(seed + 900);
    const double gamma = rng.uniform(0.01, 1.0);
    std::vector<double> p(41, 0.0);
    p[0] = gamma;
    p[1] = 1.0 - gamma;
    const WorkDistribution wd = work_distribution(ch, inst.sys, DiagonalState(p, ch.battery()));
    if (average_work(wd) > 0.0) continue;
    ++used;
    CHECK(theorem4_check(wd, gamma).passed);
  }
  CHECK(used > 30);
}

TEST_CASE("work csv") {
  std::ostringstream out;
  write_work_csv(out, WorkDistribution({{-0.5, 0.25}, {1.0, 0.75}}));
  CHECK(out.str() == "w,p\n-0.5,0.25\n1,0.75\n");
}
