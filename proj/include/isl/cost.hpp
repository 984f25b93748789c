#pragma once

#include <cstdint>

#include "isl/coverage.hpp"

namespace isl {

// FLOPS accounting for k completions of one prompt:
//   C = N_p * F + N_d * F * k.
struct CostParams {
  std::int64_t prompt_tokens = 1;  // N_p
  std::int64_t decode_tokens = 1;  // N_d, per completion
  double flops_per_token = 1.0;    // F

  void validate() const;
  // Cost of a single completion, the smallest feasible budget.
  double min_budget() const;
};

enum class CostMode {
  kAsymptotic,  // the large-k power-law form (default; exact complement identity)
  kExact,       // floor to whole completions, then evaluate the exact pass@k
};

double total_cost(const CostParams& params, std::int64_t k);

// Coverage attainable within `budget` FLOPS. Asymptotic mode evaluates
//   A * (1 - Gamma(beta)/B(alpha,beta) * ((C/F - N_p)/N_d)^-beta)
// on the continuous completion count; exact mode floors to whole completions.
// Budgets below one completion raise a domain error naming the minimum.
double coverage_of_cost(const BetaFailureModel& model, const CostParams& params,
                        double budget, CostMode mode = CostMode::kAsymptotic);

// Residual loss at `budget`; complements coverage_of_cost to the ceiling.
double loss_of_cost(const BetaFailureModel& model, const CostParams& params,
                    double budget, CostMode mode = CostMode::kAsymptotic);

// Smallest k with pass_at_k_exact(model, k) >= target. The closed-form
// inverse of the large-k law seeds a bracketed integer search.
std::int64_t k_for_target_coverage(const BetaFailureModel& model, double target);

// total_cost at k_for_target_coverage.
double cost_for_target_coverage(const BetaFailureModel& model, const CostParams& params,
                                double target);

}  // namespace isl
