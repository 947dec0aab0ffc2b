#pragma once

#include "thermo/linalg.hpp"
#include "thermo/spectra.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace thermo {

// Concave piecewise-linear curve of cumulative (Gibbs weight, probability).
struct ThermoCurve {
  std::vector<std::pair<double, double>> points;  // starts at (0, 0)
  std::vector<int> order;                         // level visited by each segment

  // Height of the curve at x (clamped to the last point beyond the end).
  double at(double x) const;
};

ThermoCurve thermo_curve(const DiagonalState& state, double beta);

inline constexpr double kCurveTol = 1e-12;

// p thermo-majorizes q: curve(p) lies on or above curve(q) at every vertex of curve(q).
bool thermo_majorizes(const DiagonalState& p, const DiagonalState& q, double beta, double tol = kCurveTol);

// Gibbs-stochastic R with R p = q, found by a phase-one simplex; nullopt when none exists.
std::optional<Matrix> solve_gibbs_transport(const DiagonalState& p, const DiagonalState& q, double beta);
bool lp_feasible_transport(const DiagonalState& p, const DiagonalState& q, double beta);

// rho ⊗ |wit=1> and sigma ⊗ |wit=0> on the joint spectrum E_s + {0, delta}; index wit * d + s.
std::pair<DiagonalState, DiagonalState> wit_formation_pair(const DiagonalState& rho, const DiagonalState& sigma,
                                                           double delta);

// Smallest wit gap delta >= 0 with rho ⊗ |1> thermo-majorizing sigma ⊗ |0>.
double min_formation_gap(const DiagonalState& rho, const DiagonalState& sigma, double beta);

}  // namespace thermo
