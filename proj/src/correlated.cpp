#include "isl/correlated.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "isl/errors.hpp"
#include "isl/specfun.hpp"

namespace isl {

void CorrelatedTrialModel::validate() const {
  if (!(ceiling > 0.0) || !(ceiling <= 1.0)) {
    throw std::invalid_argument("CorrelatedTrialModel: ceiling must lie in (0, 1]");
  }
  if (!(failure >= 0.0) || !(failure <= 1.0)) {
    throw std::invalid_argument("CorrelatedTrialModel: failure must lie in [0, 1]");
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("CorrelatedTrialModel: kappa must be >= 0");
  }
}

double effective_k(std::int64_t k, double kappa) {
  return generalized_harmonic(k, kappa);
}

double pass_at_k_correlated(const CorrelatedTrialModel& model, std::int64_t k) {
  model.validate();
  if (k < 1) {
    throw std::domain_error("pass_at_k_correlated requires k >= 1");
  }
  const double keff = effective_k(k, model.kappa);
  return model.ceiling * (1.0 - std::pow(model.failure, keff));
}

void TrialMatrix::validate() const {
  if (samples() < 2 || trials() < 2) {
    throw std::invalid_argument("TrialMatrix requires at least 2 samples and 2 trials");
  }
  if (!values.allFinite()) {
    throw std::invalid_argument("TrialMatrix entries must be finite");
  }
}

void TrialMatrix::validate_binary() const {
  validate();
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      const double v = values(i, j);
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument("TrialMatrix entry (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ") is not binary");
      }
    }
  }
}

Eigen::MatrixXd error_correlation_matrix(const TrialMatrix& trials, bool center) {
  trials.validate();
  const Eigen::Index n = trials.samples();
  const Eigen::Index k = trials.trials();

  Eigen::MatrixXd data = trials.values;
  if (center) {
    data.rowwise() -= data.colwise().mean();
  }
  // rankUpdate fills one triangle with a fixed per-entry summation order, so
  // the result is exactly symmetric and reproducible.
  Eigen::MatrixXd corr = Eigen::MatrixXd::Zero(k, k);
  corr.selfadjointView<Eigen::Lower>().rankUpdate(data.transpose(),
                                                  1.0 / static_cast<double>(n));
  corr.triangularView<Eigen::StrictlyUpper>() = corr.transpose();
  return corr;
}

EigenDecomposition eigen_decomposition(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw std::domain_error("eigen_decomposition requires a square matrix");
  }
  const double scale = matrix.cwiseAbs().maxCoeff();
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(scale, 1e-300)) {
    throw std::domain_error("eigen_decomposition: matrix is asymmetric beyond tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigen_decomposition: eigensolver failed to converge");
  }
  return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

Spectrum eigen_spectrum(const Eigen::MatrixXd& matrix) {
  const EigenDecomposition dec = eigen_decomposition(matrix);
  Eigen::VectorXd ev = dec.eigenvalues.reverse();
  const double top = ev.size() > 0 ? std::abs(ev[0]) : 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < 0.0 && ev[i] >= -1e-10 * top) {
      ev[i] = 0.0;
    }
  }
  return Spectrum{std::move(ev)};
}

RankRange RankRange::defaults(Eigen::Index spectrum_size) {
  RankRange r;
  r.first = std::min<Eigen::Index>(2, spectrum_size);
  r.last = std::max(r.first, (spectrum_size * 9) / 10);
  return r;
}

KappaEstimate estimate_kappa(const Spectrum& spectrum, RankRange range) {
  const Eigen::Index k = spectrum.eigenvalues.size();
  if (k < 3) {
    throw EstimationError("estimate_kappa: spectrum has fewer than 3 eigenvalues");
  }
  if (range.first == 0 && range.last == 0) {
    range = RankRange::defaults(k);
  }
  if (range.first < 1 || range.last > k || range.first > range.last) {
    throw std::domain_error("estimate_kappa: rank range must lie within [1, " +
                            std::to_string(k) + "]");
  }

  KappaEstimate est;
  est.first_rank = range.first;
  est.last_rank = range.last;
  for (Eigen::Index r = range.first; r <= range.last; ++r) {
    if (!(spectrum.eigenvalues[r - 1] > 0.0)) {
      est.last_rank = r - 1;
      est.warning = "fit range truncated at rank " + std::to_string(r - 1) +
                    ": eigenvalues at and beyond rank " + std::to_string(r) +
                    " are not positive";
      break;
    }
  }
  const Eigen::Index n_pts = est.last_rank - est.first_rank + 1;
  if (n_pts < 3) {
    throw EstimationError("estimate_kappa: fewer than 3 positive eigenvalues in range");
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (Eigen::Index r = est.first_rank; r <= est.last_rank; ++r) {
    const double x = std::log(static_cast<double>(r));
    const double y = std::log(spectrum.eigenvalues[r - 1]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double n = static_cast<double>(n_pts);
  const double ss_xx = sxx - sx * sx / n;
  const double ss_xy = sxy - sx * sy / n;
  const double ss_yy = syy - sy * sy / n;
  if (!(ss_xx > 0.0)) {
    throw EstimationError("estimate_kappa: degenerate rank range");
  }
  const double slope = ss_xy / ss_xx;
  est.kappa = -slope;
  est.r_squared = ss_yy > 0.0 ? (ss_xy * ss_xy) / (ss_xx * ss_yy) : 1.0;
  return est;
}

}  // namespace isl
