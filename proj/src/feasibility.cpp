#include "thermo/feasibility.hpp"

#include "thermo/errors.hpp"
#include "thermo/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace thermo {

double ThermoCurve::at(double x) const {
  if (x <= 0.0) return 0.0;
  // First vertex at or beyond x; with repeated x values the last one (highest y) wins.
  auto it = std::upper_bound(points.begin(), points.end(), x,
                             [](double v, const std::pair<double, double>& pt) { return v < pt.first; });
  if (it == points.end()) return points.back().second;
  const auto& right = *it;
  const auto& left = *(it - 1);
  const double width = right.first - left.first;
  if (width <= 0.0) return right.second;
  return left.second + (right.second - left.second) * (x - left.first) / width;
}

ThermoCurve thermo_curve(const DiagonalState& state, double beta) {
  if (!(beta > 0.0)) throw Error(ErrorCode::DomainError, "beta must be positive");
  const int n = state.size();
  std::vector<double> key(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    key[static_cast<size_t>(i)] = state[i] > 0.0 ? std::log(state[i]) + beta * state.spectrum()[i]
                                                 : -std::numeric_limits<double>::infinity();
  }
  ThermoCurve c;
  c.order.resize(static_cast<size_t>(n));
  std::iota(c.order.begin(), c.order.end(), 0);
  std::stable_sort(c.order.begin(), c.order.end(),
                   [&](int a, int b) { return key[static_cast<size_t>(a)] > key[static_cast<size_t>(b)]; });
  c.points.reserve(static_cast<size_t>(n) + 1);
  c.points.emplace_back(0.0, 0.0);
  double x = 0.0, y = 0.0;
  for (int i : c.order) {
    x += std::exp(-beta * state.spectrum()[i]);
    y += state[i];
    c.points.emplace_back(x, y);
  }
  return c;
}

bool thermo_majorizes(const DiagonalState& p, const DiagonalState& q, double beta, double tol) {
  if (!(p.spectrum() == q.spectrum())) throw Error(ErrorCode::SpectrumMismatch, "thermomajorization needs one spectrum");
  const ThermoCurve cp = thermo_curve(p, beta);
  const ThermoCurve cq = thermo_curve(q, beta);
  for (const auto& [x, y] : cq.points) {
    if (cp.at(x) < y - tol) return false;
  }
  return true;
}

std::optional<Matrix> solve_gibbs_transport(const DiagonalState& p, const DiagonalState& q, double beta) {
  if (!(p.spectrum() == q.spectrum())) throw Error(ErrorCode::SpectrumMismatch, "transport needs one spectrum");
  const int d = p.size();
  std::vector<double> g = gibbs_weights(p.spectrum(), beta);
  const double gmax = *std::max_element(g.begin(), g.end());
  for (double& v : g) v /= gmax;

  // Unknown R(i, j) sits at column i * d + j.
  Matrix a = Matrix::Zero(3 * d, d * d);
  Vector b(3 * d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) a(j, i * d + j) = 1.0;
    b(j) = 1.0;
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      a(d + i, i * d + j) = g[static_cast<size_t>(j)];
      a(2 * d + i, i * d + j) = p[j];
    }
    b(d + i) = g[static_cast<size_t>(i)];
    b(2 * d + i) = q[i];
  }
  const PhaseOneResult res = phase_one_feasibility(a, b);
  if (!res.feasible) return std::nullopt;
  if (res.max_residual > 1e-8) {
    throw Error(ErrorCode::SolverFailure, "phase one reported feasibility with residual " +
                                              std::to_string(res.max_residual));
  }
  Matrix r(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) r(i, j) = std::max(0.0, res.x[static_cast<size_t>(i * d + j)]);
  }
  // Pivoting leaves column sums off by a few ulps per entry; renormalize so the result is stochastic to 1e-15.
  for (int j = 0; j < d; ++j) r.col(j) /= r.col(j).sum();
  return r;
}

bool lp_feasible_transport(const DiagonalState& p, const DiagonalState& q, double beta) {
  return solve_gibbs_transport(p, q, beta).has_value();
}

std::pair<DiagonalState, DiagonalState> wit_formation_pair(const DiagonalState& rho, const DiagonalState& sigma,
                                                           double delta) {
  if (!(rho.spectrum() == sigma.spectrum())) throw Error(ErrorCode::SpectrumMismatch, "formation needs one spectrum");
  const int d = rho.size();
  std::vector<double> levels(static_cast<size_t>(2 * d));
  std::vector<double> p(static_cast<size_t>(2 * d), 0.0), q(static_cast<size_t>(2 * d), 0.0);
  for (int s = 0; s < d; ++s) {
    levels[static_cast<size_t>(s)] = rho.spectrum()[s];
    levels[static_cast<size_t>(d + s)] = rho.spectrum()[s] + delta;
    p[static_cast<size_t>(d + s)] = rho[s];
    q[static_cast<size_t>(s)] = sigma[s];
  }
  const EnergySpectrum joint(std::move(levels), "system+wit");
  return {DiagonalState(std::move(p), joint), DiagonalState(std::move(q), joint)};
}

double min_formation_gap(const DiagonalState& rho, const DiagonalState& sigma, double beta) {
  constexpr double kBracketMax = 1e4;
  auto feasible = [&](double delta) {
    const auto [p, q] = wit_formation_pair(rho, sigma, delta);
    return thermo_majorizes(p, q, beta);
  };
  if (feasible(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (!feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBracketMax) {
      if (feasible(kBracketMax)) {
        hi = kBracketMax;
        break;
      }
      throw Error(ErrorCode::Infeasible, "no wit gap up to 1e4 forms the target state");
    }
  }
  // Bisect to the resolution of doubles rather than stopping at the 1e-10 contract.
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace thermo
