#include "isl/nnls.hpp"

#include <Eigen/QR>
#include <limits>
#include <stdexcept>
#include <vector>

namespace isl {

Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     double* residual_norm, int max_iter) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m) {
    throw std::invalid_argument("nnls: dimension mismatch between A and b");
  }
  if (max_iter < 0) {
    max_iter = static_cast<int>(3 * n) + 30;
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  Eigen::Index n_passive = 0;

  Eigen::VectorXd w(n);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     A.cwiseAbs().colwise().sum().maxCoeff() * static_cast<double>(m);

  // Solves the unconstrained least squares restricted to the passive set.
  auto solve_passive = [&](Eigen::VectorXd& z) {
    Eigen::MatrixXd Ap(m, n_passive);
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)]) Ap.col(c++) = A.col(j);
    }
    Eigen::VectorXd zp = Ap.colPivHouseholderQr().solve(b);
    z.setZero();
    c = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)]) z[j] = zp[c++];
    }
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    w.noalias() = A.transpose() * (b - A * x);

    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) break;  // KKT satisfied

    passive[static_cast<std::size_t>(best)] = true;
    ++n_passive;

    Eigen::VectorXd z(n);
    for (;;) {
      solve_passive(z);
      bool all_positive = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) {
          all_positive = false;
          break;
        }
      }
      if (all_positive) {
        x = z;
        break;
      }
      // Step toward z only as far as feasibility allows, then drop the
      // variables that hit zero back to the active set.
      double step = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) {
          step = std::min(step, x[j] / (x[j] - z[j]));
        }
      }
      x += step * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x[j] <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          --n_passive;
          x[j] = 0.0;
        }
      }
      if (n_passive == 0) {
        x.setZero();
        break;
      }
    }
  }

  if (residual_norm != nullptr) {
    *residual_norm = (A * x - b).norm();
  }
  return x;
}

}  // namespace isl
