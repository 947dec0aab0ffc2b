#include "thermo/simplex.hpp"

#include "thermo/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace thermo {

namespace {

constexpr double kPivotTol = 1e-12;

}  // namespace

PhaseOneResult phase_one_feasibility(const Matrix& a, const Vector& b, double tol) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (b.size() != m) throw Error(ErrorCode::DimensionMismatch, "rhs length differs from constraint count");

  // Columns: n originals, m artificials, then the right-hand side.
  Matrix t = Matrix::Zero(m, n + m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * a.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = sign * b(i);
  }
  std::vector<Eigen::Index> basis(static_cast<size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;

  // Reduced costs of "minimize the artificial sum"; the last entry is minus the objective.
  Eigen::RowVectorXd cost = Eigen::RowVectorXd::Zero(n + m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    cost.head(n) -= t.row(i).head(n);
    cost(n + m) -= t(i, n + m);
  }

  PhaseOneResult res;
  const int max_iter = 50 * static_cast<int>(n + m) + 1000;
  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (cost(j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    if (++res.iterations > max_iter) {
      throw Error(ErrorCode::SolverFailure, "phase-one simplex exceeded " + std::to_string(max_iter) +
                                                " iterations; objective " + std::to_string(-cost(n + m)));
    }
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double piv = t(i, enter);
      if (piv <= kPivotTol) continue;
      const double ratio = t(i, n + m) / piv;
      if (ratio < best - 1e-15 ||
          (ratio <= best + 1e-15 && leave >= 0 && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      // Phase one is bounded below by zero, so an unbounded ray signals numerical trouble.
      throw Error(ErrorCode::SolverFailure, "phase-one simplex found an unbounded direction");
    }
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    cost -= cost(enter) * t.row(leave);
    basis[static_cast<size_t>(leave)] = enter;
  }

  res.x.assign(static_cast<size_t>(n), 0.0);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = basis[static_cast<size_t>(i)];
    if (j < n) res.x[static_cast<size_t>(j)] = std::max(0.0, t(i, n + m));
  }
  res.infeasibility = std::max(0.0, -cost(n + m));
  const Vector x = Eigen::Map<const Vector>(res.x.data(), n);
  res.max_residual = m ? (a * x - b).cwiseAbs().maxCoeff() : 0.0;
  res.feasible = res.infeasibility <= tol;
  return res;
}

}  // namespace thermo
