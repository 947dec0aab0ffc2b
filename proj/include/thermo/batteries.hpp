#pragma once

#include "thermo/channels.hpp"
#include "thermo/spectra.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace thermo {

enum class BatteryKind { Wit, Oscillator, WeightPointMasses };

class BatteryModel {
 public:
  static BatteryModel wit(double delta);
  static BatteryModel oscillator(int num_steps, double delta);
  // Finite set of weight heights; duplicates within 1e-12 are merged.
  static BatteryModel weight_point_masses(std::vector<double> shifts);

  BatteryKind kind() const { return kind_; }
  double delta() const { return delta_; }
  int num_steps() const { return num_steps_; }
  const EnergySpectrum& spectrum() const { return spectrum_; }

 private:
  BatteryKind kind_ = BatteryKind::Wit;
  double delta_ = 0.0;
  int num_steps_ = 0;
  EnergySpectrum spectrum_;
};

inline constexpr double kWorkMergeTol = 1e-12;

class WorkDistribution {
 public:
  WorkDistribution() = default;
  // Sorts by work value, merges values within kWorkMergeTol and drops zero-probability points.
  explicit WorkDistribution(std::vector<std::pair<double, double>> points);

  static WorkDistribution point_mass(double w) { return WorkDistribution({{w, 1.0}}); }

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }
  int size() const { return static_cast<int>(support_.size()); }
  // Probability of the support point within kWorkMergeTol of w (0 if absent).
  double prob_of(double w) const;

 private:
  std::vector<double> support_;
  std::vector<double> probs_;
};

// p(w) with w = eps_k' - eps_k, summed over system labels.
WorkDistribution work_distribution(const ThermalChannel& channel, const DiagonalState& sys, const DiagonalState& bat);
WorkDistribution work_distribution(const ThermalChannel& channel, const Vector& joint_in);

double average_work(const WorkDistribution& wd);
double variance(const WorkDistribution& wd);
// max over the support of |w - <w>|.
double f1_measure(const WorkDistribution& wd);

class CostFunction {
 public:
  // Throws DomainError unless f(0) = 0.
  CostFunction(std::function<double(double)> f, std::string tag);

  double operator()(double x) const { return f_(x); }
  const std::string& tag() const { return tag_; }

 private:
  std::function<double(double)> f_;
  std::string tag_;
};

CostFunction square_cost();
// e^{|x|} - 1.
CostFunction exp_cost();
// 0 inside |x| <= c, `outside` beyond (a finite stand-in for infinity).
CostFunction absolute_window_cost(double c, double outside = 1e300);

// sum_w p(w) f(w - <w>).
double general_cost(const WorkDistribution& wd, const CostFunction& cost);

struct Theorem4Report {
  double avg_work = 0.0;
  double var = 0.0;
  double floor = 0.0;   // gamma <w>^2
  double margin = 0.0;  // Var - gamma <w>^2
  bool passed = false;
};

// Var[w] >= gamma <w>^2 for processes with <w> <= 0; gamma is the initial ground-level
// population of the battery. Throws PreconditionViolated when <w> > 1e-12.
Theorem4Report theorem4_check(const WorkDistribution& wd, double gamma);

// CSV with header `w,p`, 17 significant digits.
void write_work_csv(std::ostream& out, const WorkDistribution& wd);

}  // namespace thermo
