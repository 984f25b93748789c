#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "isl/curve.hpp"

namespace isl {

// Failure-probability model: each task fails a single attempt with
// probability p ~ Beta(alpha, beta), and `ceiling` caps attainable coverage.
struct BetaFailureModel {
  double ceiling = 1.0;  // A, in (0, 1]
  double alpha = 1.0;    // easy-sample concentration, > 0
  double beta = 1.0;     // hard-sample tail exponent, > 0

  double mean_failure() const { return alpha / (alpha + beta); }
  double concentration() const { return alpha + beta; }

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

// pass@k = A * (1 - Gamma(beta) Gamma(k+alpha) / (B(alpha,beta) Gamma(k+alpha+beta))),
// evaluated in the log domain. Exactly 0 at k = 0; non-decreasing in k;
// bounded above by the ceiling.
double pass_at_k_exact(const BetaFailureModel& model, std::int64_t k);

// Large-k form A * (1 - Gamma(beta) k^-beta / B(alpha,beta)). An
// approximation: below asymptotic_validity_threshold() it can deviate from
// the exact value by more than 1% on the complement scale (clamped to [0, A]).
double pass_at_k_asymptotic(const BetaFailureModel& model, std::int64_t k);

// Smallest k at which the asymptotic complement agrees with the exact one
// within 1% relative.
std::int64_t asymptotic_validity_threshold(const BetaFailureModel& model);

// Expected residual failure after k attempts, L(k) = A * <p^k>. Shares the
// complement identity pass@k + L(k) = A with pass_at_k_exact. The asymptotic
// flag switches to A * Gamma(beta) k^-beta / B(alpha,beta) and requires k >= 1.
double inference_loss(const BetaFailureModel& model, std::int64_t k, bool asymptotic = false);

// Perceived-difficulty density over sigma = log(1/p):
//   f(sigma) = e^{-alpha sigma} (1 - e^{-sigma})^{beta-1} / B(alpha, beta).
// Integrates to 1 over (0, inf); diverges at 0+ when beta < 1.
double difficulty_density(const BetaFailureModel& model, double sigma);

// Log-spaced grid over sigma plus the ridge weight used by the inversion.
struct SigmaGridSpec {
  int cells = 64;
  double sigma_min = 1e-4;
  double sigma_max = 10.0;
  double ridge = 1e-6;

  Eigen::VectorXd grid() const;
};

struct DifficultyDensity {
  Eigen::VectorXd sigma_grid;  // strictly increasing
  Eigen::VectorXd weights;     // non-negative mass per cell, sums to 1
  double residual_norm = 0.0;  // ||E w - f~|| of the unnormalized NNLS solution

  // Mean failure probability implied by the recovered density.
  double mean_failure() const {
    return (weights.array() * (-sigma_grid.array()).exp()).sum();
  }
};

// Recovers the difficulty density from an observed coverage curve by
// non-negative least squares on f~(k) = (A - pass@k)/A against the kernel
// e^{-sigma k} over the grid, then normalizes the weights to unit mass.
// The curve needs at least `cells` observations; the ceiling must not fall
// below the maximum observed coverage.
DifficultyDensity invert_difficulty(const CoverageCurve& curve, double ceiling,
                                    const SigmaGridSpec& spec = {});

}  // namespace isl
