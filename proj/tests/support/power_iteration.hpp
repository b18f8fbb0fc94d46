#pragma once

#include <Eigen/Dense>

// Test-side steady-state oracle, independent of the production solver:
// Cesaro-averaged power iteration J_k = J_0 P^k, which converges for
// periodic chains where plain powering oscillates.
inline Eigen::VectorXd cesaro_steady_state(const Eigen::MatrixXd& matrix,
                                           int iterations = 200000) {
  const int dim = static_cast<int>(matrix.rows());
  Eigen::RowVectorXd j = Eigen::RowVectorXd::Zero(dim);
  j(0) = 1.0;
  Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(dim);
  for (int k = 0; k < iterations; ++k) {
    j = j * matrix;
    sum += j;
  }
  Eigen::VectorXd pi = (sum / static_cast<double>(iterations)).transpose();
  pi /= pi.sum();
  return pi;
}
