#pragma once

#include "thermo/linalg.hpp"

#include <vector>

namespace thermo {

struct PhaseOneResult {
  bool feasible = false;
  double infeasibility = 0.0;  // optimal sum of artificial variables
  double max_residual = 0.0;   // max |A x - b| at the returned point
  int iterations = 0;
  std::vector<double> x;       // a basic solution when feasible
};

// Decides whether {x >= 0 : A x = b} is non-empty with a dense-tableau phase-one
// simplex (Bland's rule). Feasible iff the artificial sum ends below tol.
// Throws SolverFailure if the iteration budget runs out.
PhaseOneResult phase_one_feasibility(const Matrix& a, const Vector& b, double tol = 1e-9);

}  // namespace thermo
