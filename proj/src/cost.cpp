#include "isl/cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "isl/specfun.hpp"

namespace isl {

namespace {

// Continuous completion count affordable within the budget: (C/F - N_p)/N_d.
double affordable_completions(const CostParams& params, double budget) {
  params.validate();
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw std::domain_error("budget must be positive and finite");
  }
  const double normalized = budget / params.flops_per_token;
  const double x = (normalized - static_cast<double>(params.prompt_tokens)) /
                   static_cast<double>(params.decode_tokens);
  if (x < 1.0) {
    throw std::domain_error("budget " + std::to_string(budget) +
                            " cannot fund one completion; minimum feasible budget is " +
                            std::to_string(params.min_budget()));
  }
  return x;
}

// min(1, Gamma(beta)/B(alpha,beta) * x^-beta): the asymptotic loss fraction.
double asymptotic_loss_fraction(const BetaFailureModel& model, double x) {
  const double lg = ln_gamma(model.beta) - ln_beta(model.alpha, model.beta) -
                    model.beta * std::log(x);
  return std::min(1.0, LogDomainValue::from_log(lg).linear());
}

}  // namespace

void CostParams::validate() const {
  if (prompt_tokens < 1 || decode_tokens < 1) {
    throw std::invalid_argument("CostParams: token counts must be positive");
  }
  if (!(flops_per_token > 0.0) || !std::isfinite(flops_per_token)) {
    throw std::invalid_argument("CostParams: flops_per_token must be positive");
  }
}

double CostParams::min_budget() const {
  return static_cast<double>(prompt_tokens + decode_tokens) * flops_per_token;
}

double total_cost(const CostParams& params, std::int64_t k) {
  params.validate();
  if (k < 1) {
    throw std::domain_error("total_cost requires k >= 1");
  }
  const double prompt_flops = static_cast<double>(params.prompt_tokens) * params.flops_per_token;
  const double decode_flops = static_cast<double>(params.decode_tokens) * params.flops_per_token;
  return prompt_flops + decode_flops * static_cast<double>(k);
}

double coverage_of_cost(const BetaFailureModel& model, const CostParams& params,
                        double budget, CostMode mode) {
  model.validate();
  const double x = affordable_completions(params, budget);
  if (mode == CostMode::kExact) {
    return pass_at_k_exact(model, static_cast<std::int64_t>(std::floor(x)));
  }
  return model.ceiling * (1.0 - asymptotic_loss_fraction(model, x));
}

double loss_of_cost(const BetaFailureModel& model, const CostParams& params,
                    double budget, CostMode mode) {
  model.validate();
  const double x = affordable_completions(params, budget);
  if (mode == CostMode::kExact) {
    return inference_loss(model, static_cast<std::int64_t>(std::floor(x)));
  }
  return model.ceiling * asymptotic_loss_fraction(model, x);
}

std::int64_t k_for_target_coverage(const BetaFailureModel& model, double target) {
  model.validate();
  if (!(target > 0.0)) {
    throw std::domain_error("target coverage must be positive");
  }
  if (target >= model.ceiling) {
    throw std::domain_error("target coverage " + std::to_string(target) +
                            " is infeasible: ceiling is " + std::to_string(model.ceiling));
  }
  constexpr std::int64_t kMaxK = std::int64_t{1} << 62;

  // Closed-form seed from the large-k law:
  //   k ~ ((A - target) B(alpha,beta) / (A Gamma(beta)))^(-1/beta).
  const double log_seed = -(std::log(model.ceiling - target) +
                            ln_beta(model.alpha, model.beta) - std::log(model.ceiling) -
                            ln_gamma(model.beta)) /
                          model.beta;
  std::int64_t seed = 1;
  if (log_seed > 0.0) {
    seed = log_seed > 42.0 ? kMaxK
                           : static_cast<std::int64_t>(std::ceil(std::exp(log_seed)));
    seed = std::clamp<std::int64_t>(seed, 1, kMaxK);
  }

  // Bracket around the seed, then binary search for the smallest k meeting
  // the target (pass@k is non-decreasing in k).
  auto meets = [&](std::int64_t k) { return pass_at_k_exact(model, k) >= target; };
  std::int64_t lo = 0;  // always below target (pass@0 = 0 < target)
  std::int64_t hi = seed;
  while (!meets(hi)) {
    lo = hi;
    if (hi >= kMaxK) {
      throw std::domain_error("target coverage " + std::to_string(target) +
                              " needs more than 2^62 completions");
    }
    hi = hi > kMaxK / 2 ? kMaxK : hi * 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (meets(mid) ? hi : lo) = mid;
  }
  return hi;
}

double cost_for_target_coverage(const BetaFailureModel& model, const CostParams& params,
                                double target) {
  return total_cost(params, k_for_target_coverage(model, target));
}

}  // namespace isl
