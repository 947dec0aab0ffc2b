#include "thermo/batteries.hpp"

#include "thermo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace thermo {

BatteryModel BatteryModel::wit(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(ErrorCode::DomainError, "wit gap must be positive");
  BatteryModel b;
  b.kind_ = BatteryKind::Wit;
  b.delta_ = delta;
  b.num_steps_ = 1;
  b.spectrum_ = EnergySpectrum::uniform(delta, 1, "wit");
  return b;
}

BatteryModel BatteryModel::oscillator(int num_steps, double delta) {
  if (num_steps < 1) throw Error(ErrorCode::DomainError, "oscillator needs at least two levels");
  BatteryModel b;
  b.kind_ = BatteryKind::Oscillator;
  b.delta_ = delta;
  b.num_steps_ = num_steps;
  b.spectrum_ = EnergySpectrum::uniform(delta, num_steps, "oscillator");
  return b;
}

BatteryModel BatteryModel::weight_point_masses(std::vector<double> shifts) {
  if (shifts.empty()) throw Error(ErrorCode::DomainError, "weight needs at least one height");
  std::sort(shifts.begin(), shifts.end());
  std::vector<double> merged;
  for (double x : shifts) {
    if (!std::isfinite(x)) throw Error(ErrorCode::DomainError, "non-finite weight height");
    if (merged.empty() || x - merged.back() > kWorkMergeTol) merged.push_back(x);
  }
  BatteryModel b;
  b.kind_ = BatteryKind::WeightPointMasses;
  b.num_steps_ = static_cast<int>(merged.size()) - 1;
  b.spectrum_ = EnergySpectrum(std::move(merged), "weight");
  return b;
}

WorkDistribution::WorkDistribution(std::vector<std::pair<double, double>> points) {
  std::sort(points.begin(), points.end());
  double total = 0.0;
  for (const auto& [w, p] : points) {
    if (!std::isfinite(w)) throw Error(ErrorCode::InvalidState, "non-finite work value");
    if (!(p >= 0.0)) throw Error(ErrorCode::InvalidState, "negative work probability");
    total += p;
    if (p == 0.0) continue;
    if (!support_.empty() && w - support_.back() <= kWorkMergeTol) {
      probs_.back() += p;
    } else {
      support_.push_back(w);
      probs_.push_back(p);
    }
  }
  if (std::abs(total - 1.0) > kNormalizationTol) {
    throw Error(ErrorCode::InvalidState, "work probabilities sum to " + std::to_string(total));
  }
}

double WorkDistribution::prob_of(double w) const {
  for (int i = 0; i < size(); ++i) {
    if (std::abs(support_[static_cast<size_t>(i)] - w) <= kWorkMergeTol) return probs_[static_cast<size_t>(i)];
  }
  return 0.0;
}

WorkDistribution work_distribution(const ThermalChannel& channel, const Vector& joint_in) {
  const Matrix& r = channel.matrix();
  if (joint_in.size() != r.cols()) throw Error(ErrorCode::DimensionMismatch, "joint input has wrong length");
  const int n = channel.battery_levels();
  const int d_in = channel.d_in(), d_out = channel.d_out();
  std::vector<std::pair<double, double>> points;
  points.reserve(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const auto x = joint_in.segment(static_cast<Eigen::Index>(k) * d_in, d_in);
    if (x.isZero(0.0)) continue;
    for (int kp = 0; kp < n; ++kp) {
      const double mass =
          (r.block(static_cast<Eigen::Index>(kp) * d_out, static_cast<Eigen::Index>(k) * d_in, d_out, d_in) * x).sum();
      if (mass != 0.0) points.emplace_back(channel.battery()[kp] - channel.battery()[k], mass);
    }
  }
  return WorkDistribution(std::move(points));
}

WorkDistribution work_distribution(const ThermalChannel& channel, const DiagonalState& sys, const DiagonalState& bat) {
  if (!(sys.spectrum() == channel.sys_in()) || !(bat.spectrum() == channel.battery())) {
    throw Error(ErrorCode::DimensionMismatch, "input states do not live on the channel's spectra");
  }
  return work_distribution(channel, product_state(sys, bat));
}

double average_work(const WorkDistribution& wd) {
  double m = 0.0;
  for (int i = 0; i < wd.size(); ++i) m += wd.support()[static_cast<size_t>(i)] * wd.probs()[static_cast<size_t>(i)];
  return m;
}

double variance(const WorkDistribution& wd) {
  const double m = average_work(wd);
  double v = 0.0;
  for (int i = 0; i < wd.size(); ++i) {
    const double dw = wd.support()[static_cast<size_t>(i)] - m;
    v += wd.probs()[static_cast<size_t>(i)] * dw * dw;
  }
  return v;
}

double f1_measure(const WorkDistribution& wd) {
  const double m = average_work(wd);
  double f = 0.0;
  for (double w : wd.support()) f = std::max(f, std::abs(w - m));
  return f;
}

CostFunction::CostFunction(std::function<double(double)> f, std::string tag) : f_(std::move(f)), tag_(std::move(tag)) {
  if (!f_ || f_(0.0) != 0.0) throw Error(ErrorCode::DomainError, "cost function must vanish at 0");
}

CostFunction square_cost() {
  return CostFunction([](double x) { return x * x; }, "square");
}

CostFunction exp_cost() {
  return CostFunction([](double x) { return std::expm1(std::abs(x)); }, "exp");
}

CostFunction absolute_window_cost(double c, double outside) {
  return CostFunction([c, outside](double x) { return std::abs(x) <= c ? 0.0 : outside; }, "absolute-window");
}

double general_cost(const WorkDistribution& wd, const CostFunction& cost) {
  const double m = average_work(wd);
  double f = 0.0;
  for (int i = 0; i < wd.size(); ++i) {
    f += wd.probs()[static_cast<size_t>(i)] * cost(wd.support()[static_cast<size_t>(i)] - m);
  }
  return f;
}

Theorem4Report theorem4_check(const WorkDistribution& wd, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorCode::DomainError, "gamma must lie in [0, 1]");
  Theorem4Report rep;
  rep.avg_work = average_work(wd);
  if (rep.avg_work > 1e-12) {
    throw Error(ErrorCode::PreconditionViolated, "variance floor only applies to <w> <= 0, got " +
                                                     std::to_string(rep.avg_work));
  }
  rep.var = variance(wd);
  rep.floor = gamma * rep.avg_work * rep.avg_work;
  rep.margin = rep.var - rep.floor;
  rep.passed = rep.margin >= -1e-12;
  return rep;
}

void write_work_csv(std::ostream& out, const WorkDistribution& wd) {
  const auto old_precision = out.precision(17);
  out << "w,p\n";
  for (int i = 0; i < wd.size(); ++i) {
    out << wd.support()[static_cast<size_t>(i)] << ',' << wd.probs()[static_cast<size_t>(i)] << '\n';
  }
  out.precision(old_precision);
}

}  // namespace thermo
