#pragma once

#include <Eigen/Core>

namespace isl {

// Lawson-Hanson active-set solver for min ||A x - b|| subject to x >= 0.
// Deterministic: ties in the entering-variable choice break toward the
// lowest column index. Returns the solution; `residual_norm`, when non-null,
// receives ||A x - b|| at the solution.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     double* residual_norm = nullptr, int max_iter = -1);

}  // namespace isl
