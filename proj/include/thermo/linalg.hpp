#pragma once

#include <Eigen/Dense>

#include <span>

namespace thermo {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Stable log(sum(exp(x))). Returns -inf for an empty input or all -inf entries.
double log_sum_exp(std::span<const double> x);

// Operator 1-norm (max absolute column sum).
double norm1(const Matrix& m);

}  // namespace thermo
