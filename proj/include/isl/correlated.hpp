#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

namespace isl {

// Effective-k model: every task shares failure probability `failure`, and
// trial correlations shrink k to H_k(kappa) independent trials.
struct CorrelatedTrialModel {
  double ceiling = 1.0;  // A, in (0, 1]
  double failure = 0.5;  // p, in [0, 1]
  double kappa = 0.0;    // correlation decay exponent, >= 0

  void validate() const;
};

// k_eff = H_k(kappa); equals k when kappa = 0 and saturates at zeta(kappa)
// for kappa > 1.
double effective_k(std::int64_t k, double kappa);

// pass@k = A * (1 - p^{H_k(kappa)}). For kappa > 1 this plateaus at
// A * (1 - p^{zeta(kappa)}) instead of reaching A.
double pass_at_k_correlated(const CorrelatedTrialModel& model, std::int64_t k);

// Per-sample, per-trial error values (rows = samples, columns = trials).
// Entries must be finite; simulator-produced latent matrices may be signed.
struct TrialMatrix {
  Eigen::MatrixXd values;

  Eigen::Index samples() const { return values.rows(); }
  Eigen::Index trials() const { return values.cols(); }

  // Requires >= 2 samples, >= 2 trials, finite entries.
  void validate() const;
  // Additionally requires every entry to be 0 or 1.
  void validate_binary() const;
};

// Uncentered trial second-moment matrix
//   eps_{tt'} = (1/n) sum_i error_{i,t} error_{i,t'}.
// With `center` the column means are removed first (sample covariance).
Eigen::MatrixXd error_correlation_matrix(const TrialMatrix& trials, bool center = false);

// Eigenvalues sorted non-increasing; negatives within the PSD rounding
// tolerance are clamped to zero.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
};

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending, as computed
  Eigen::MatrixXd eigenvectors;  // columns match eigenvalues
};

// Full symmetric eigendecomposition. Rejects matrices whose asymmetry
// exceeds 1e-10 of the largest entry.
EigenDecomposition eigen_decomposition(const Eigen::MatrixXd& matrix);

// Descending, clamped eigenvalue spectrum of a symmetric matrix.
Spectrum eigen_spectrum(const Eigen::MatrixXd& matrix);

// 1-based inclusive eigenvalue rank interval for the power-law fit.
struct RankRange {
  Eigen::Index first = 0;  // 0 means "use the default for this spectrum"
  Eigen::Index last = 0;

  // Default: drop the top eigenvalue and the bottom 10% (the ends of
  // empirical spectra bend away from the power law).
  static RankRange defaults(Eigen::Index spectrum_size);
};

struct KappaEstimate {
  double kappa = 0.0;
  double r_squared = 0.0;
  Eigen::Index first_rank = 0;  // range actually used (1-based, inclusive)
  Eigen::Index last_rank = 0;
  std::string warning;  // non-empty when the range was truncated at zeros
};

// Fits log(eigenvalue) ~ -kappa * log(rank) by ordinary least squares over
// the requested rank range. Ranges reaching into zero eigenvalues are
// truncated at the last positive one (with a warning); fewer than 3 usable
// points raise EstimationError.
KappaEstimate estimate_kappa(const Spectrum& spectrum, RankRange range = {});

}  // namespace isl
