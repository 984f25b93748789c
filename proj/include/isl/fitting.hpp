#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isl/correlated.hpp"
#include "isl/coverage.hpp"
#include "isl/curve.hpp"

namespace isl {

enum class FitObjective {
  kLinear,
  // Residuals on log(A - pass@k). The default: the the large-k tail carries
  // the exponent and the curves are judged on log axes. A second pass
  // reweights residuals by the fitted complement-to-coverage ratio, which
  // whitens multiplicative observation noise.
  kLogComplement,
};

// Per-parameter bounds. Order matches the model fields:
// (ceiling, alpha, beta) or (ceiling, failure, kappa).
struct ParameterBox {
  std::array<double, 3> lower;
  std::array<double, 3> upper;
};

template <typename ModelT>
struct FitResult {
  ModelT model;
  double objective_value = 0.0;
  bool converged = false;
  int iterations = 0;
  Eigen::VectorXd residuals;  // per point, in the objective's residual space
  bool degenerate = false;    // e.g. an all-failure curve pushed p to 1
};

// Model predictions on a strictly increasing k list. The correlated variant
// uses the batched harmonic evaluator, so large k stays cheap.
std::vector<double> predict_curve(const BetaFailureModel& model,
                                  const std::vector<std::int64_t>& ks);
std::vector<double> predict_curve(const CorrelatedTrialModel& model,
                                  const std::vector<std::int64_t>& ks);

// Least-squares fit of (A, alpha, beta) by Nelder-Mead simplex from a fixed
// 8-point multi-start grid. Deterministic for identical inputs. The ceiling
// lower bound is raised to max observed coverage + 1e-6 regardless of
// `bounds`. Curves need at least 4 points.
FitResult<BetaFailureModel> fit_beta_model(
    const CoverageCurve& curve, FitObjective objective = FitObjective::kLogComplement,
    const std::optional<ParameterBox>& bounds = std::nullopt);

// Same optimizer contract over (A, p, kappa).
FitResult<CorrelatedTrialModel> fit_correlated_model(
    const CoverageCurve& curve, const std::optional<ParameterBox>& bounds = std::nullopt);

struct GoodnessOfFit {
  double rmse = 0.0;
  double max_abs_err = 0.0;
  std::optional<double> r2_logspace;  // absent when coverage >= ceiling somewhere
  std::string warning;
};

GoodnessOfFit goodness_of_fit(const CoverageCurve& curve, const BetaFailureModel& model);
GoodnessOfFit goodness_of_fit(const CoverageCurve& curve, const CorrelatedTrialModel& model);

// Default bound boxes (the ceiling lower bound still tracks the curve).
ParameterBox default_beta_bounds(const CoverageCurve& curve);
ParameterBox default_correlated_bounds(const CoverageCurve& curve);

}  // namespace isl
