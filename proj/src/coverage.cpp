#include "isl/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "isl/nnls.hpp"
#include "isl/specfun.hpp"

namespace isl {

namespace {

// <p^k> = B(alpha + k, beta) / B(alpha, beta), in the log domain throughout.
double mean_failure_pow(const BetaFailureModel& m, double k) {
  const LogDomainValue num = LogDomainValue::from_log(ln_beta(m.alpha + k, m.beta));
  const LogDomainValue den = LogDomainValue::from_log(ln_beta(m.alpha, m.beta));
  return (num / den).linear();
}

// Gamma(beta) k^-beta / B(alpha, beta), the large-k complement, clamped to 1
// so the asymptote stays a probability even where it is invalid (small k).
double asymptotic_complement(const BetaFailureModel& m, double k) {
  const double lg = ln_gamma(m.beta) - m.beta * std::log(k) - ln_beta(m.alpha, m.beta);
  return std::min(1.0, LogDomainValue::from_log(lg).linear());
}

}  // namespace

void BetaFailureModel::validate() const {
  if (!(ceiling > 0.0) || !(ceiling <= 1.0)) {
    throw std::invalid_argument("BetaFailureModel: ceiling must lie in (0, 1]");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("BetaFailureModel: alpha must be positive");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("BetaFailureModel: beta must be positive");
  }
}

double pass_at_k_exact(const BetaFailureModel& model, std::int64_t k) {
  model.validate();
  if (k < 0) {
    throw std::domain_error("pass_at_k_exact requires k >= 0");
  }
  if (k == 0) {
    return 0.0;  // <p^0> = 1
  }
  return model.ceiling * (1.0 - mean_failure_pow(model, static_cast<double>(k)));
}

double pass_at_k_asymptotic(const BetaFailureModel& model, std::int64_t k) {
  model.validate();
  if (k < 1) {
    throw std::domain_error("pass_at_k_asymptotic requires k >= 1");
  }
  return model.ceiling * (1.0 - asymptotic_complement(model, static_cast<double>(k)));
}

std::int64_t asymptotic_validity_threshold(const BetaFailureModel& model) {
  model.validate();
  auto within = [&](std::int64_t k) {
    const double exact = mean_failure_pow(model, static_cast<double>(k));
    const double asym = asymptotic_complement(model, static_cast<double>(k));
    return std::abs(asym - exact) <= 0.01 * exact;
  };
  std::int64_t hi = 1;
  while (!within(hi)) {
    if (hi > (std::int64_t{1} << 60)) {
      throw std::runtime_error("asymptotic_validity_threshold: no convergence below 2^60");
    }
    hi *= 2;
  }
  std::int64_t lo = hi / 2;  // lo = 0 means hi == 1 already agrees
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (within(mid) ? hi : lo) = mid;
  }
  return hi;
}

double inference_loss(const BetaFailureModel& model, std::int64_t k, bool asymptotic) {
  model.validate();
  if (k < 0) {
    throw std::domain_error("inference_loss requires k >= 0");
  }
  if (asymptotic) {
    if (k == 0) {
      throw std::domain_error("asymptotic inference loss is undefined at k = 0");
    }
    return model.ceiling * asymptotic_complement(model, static_cast<double>(k));
  }
  return model.ceiling * mean_failure_pow(model, static_cast<double>(k));
}

double difficulty_density(const BetaFailureModel& model, double sigma) {
  model.validate();
  if (!(sigma > 0.0)) {
    throw std::domain_error("difficulty_density requires sigma > 0");
  }
  // -expm1(-sigma) = 1 - e^-sigma without cancellation for small sigma.
  const double log_density = -model.alpha * sigma +
                             (model.beta - 1.0) * std::log(-std::expm1(-sigma)) -
                             ln_beta(model.alpha, model.beta);
  return std::exp(log_density);
}

Eigen::VectorXd SigmaGridSpec::grid() const {
  if (cells < 2 || !(sigma_min > 0.0) || !(sigma_max > sigma_min)) {
    throw std::invalid_argument("sigma grid requires cells >= 2 and 0 < sigma_min < sigma_max");
  }
  Eigen::VectorXd g(cells);
  const double step = (std::log(sigma_max) - std::log(sigma_min)) / (cells - 1);
  for (int j = 0; j < cells; ++j) {
    g[j] = std::exp(std::log(sigma_min) + step * j);
  }
  return g;
}

DifficultyDensity invert_difficulty(const CoverageCurve& curve, double ceiling,
                                    const SigmaGridSpec& spec) {
  curve.validate();
  if (!(ceiling > 0.0) || !(ceiling <= 1.0)) {
    throw std::domain_error("invert_difficulty: ceiling must lie in (0, 1]");
  }
  const double max_obs = curve.max_coverage();
  if (ceiling < max_obs) {
    throw std::domain_error("invert_difficulty: ceiling " + std::to_string(ceiling) +
                            " is below the maximum observed coverage " +
                            std::to_string(max_obs));
  }
  const Eigen::Index n_obs = static_cast<Eigen::Index>(curve.size());
  if (n_obs < spec.cells) {
    throw std::domain_error("invert_difficulty: need at least as many observations (" +
                            std::to_string(n_obs) + ") as grid cells (" +
                            std::to_string(spec.cells) + ")");
  }

  const Eigen::VectorXd sigma = spec.grid();
  const Eigen::Index n_cells = sigma.size();

  // Ridge-augmented design: rows e^{-sigma_j k_m}, then sqrt(ridge) * I.
  Eigen::MatrixXd design(n_obs + n_cells, n_cells);
  Eigen::VectorXd target = Eigen::VectorXd::Zero(n_obs + n_cells);
  for (Eigen::Index m = 0; m < n_obs; ++m) {
    const double kd = static_cast<double>(curve.k[static_cast<std::size_t>(m)]);
    for (Eigen::Index j = 0; j < n_cells; ++j) {
      design(m, j) = std::exp(-sigma[j] * kd);
    }
    target[m] = (ceiling - curve.coverage[static_cast<std::size_t>(m)]) / ceiling;
  }
  design.bottomRows(n_cells) = std::sqrt(spec.ridge) *
                               Eigen::MatrixXd::Identity(n_cells, n_cells);

  DifficultyDensity out;
  out.sigma_grid = sigma;
  Eigen::VectorXd w = nnls(design, target);
  out.residual_norm = (design.topRows(n_obs) * w - target.head(n_obs)).norm();

  const double mass = w.sum();
  if (mass > 0.0) {
    w /= mass;
  }
  out.weights = w;
  return out;
}

}  // namespace isl
