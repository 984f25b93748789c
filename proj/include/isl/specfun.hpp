#pragma once

#include <cstdint>
#include <vector>

namespace isl {

// A strictly positive quantity stored as its natural log, so products and
// ratios of huge gamma-function values never overflow while intermediate.
struct LogDomainValue {
  double log_magnitude = 0.0;

  static LogDomainValue from_log(double lg) { return LogDomainValue{lg}; }
  static LogDomainValue from_linear(double v);

  LogDomainValue operator*(LogDomainValue o) const {
    return LogDomainValue{log_magnitude + o.log_magnitude};
  }
  LogDomainValue operator/(LogDomainValue o) const {
    return LogDomainValue{log_magnitude - o.log_magnitude};
  }

  // Conversion to the linear domain. Throws std::overflow_error instead of
  // silently returning inf when the value is not representable.
  double linear() const;
};

// ln Gamma(x) for x > 0. Lanczos approximation with reflection below 0.5;
// relative error <= 1e-12 over [1e-6, 1e6] (absolute near the zeros at 1, 2).
double ln_gamma(double x);

// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b), a, b > 0.
double ln_beta(double a, double b);

// ln C(n, r) for 0 <= r <= n, evaluated through ln_gamma.
double ln_choose(double n, double r);

// Generalized harmonic number H_k(kappa) = sum_{i=1..k} i^-kappa.
// Direct summation for k <= 1e6 (and always when kappa <= 1); beyond that,
// for kappa > 1, the tail is folded into zeta(kappa) via
//   H_k(kappa) ~ zeta(kappa) + (1/2 - k/(kappa-1)) k^-kappa,
// whose error is O(k^-kappa-1) and far below 1e-6 relative at the switch.
double generalized_harmonic(std::int64_t k, double kappa);

// H_k(kappa) for a strictly increasing list of k values in one pass: exact
// cumulative summation up to an internal anchor, Euler-Maclaurin segment
// sums beyond it (absolute error < 1e-11). Much faster than repeated
// generalized_harmonic calls when the list reaches into large k.
std::vector<double> generalized_harmonic_batch(const std::vector<std::int64_t>& ks,
                                               double kappa);

// Riemann zeta(s) for s > 1 via Euler-Maclaurin summation.
// Relative error <= 1e-10 for s in (1 + 1e-3, 50].
double riemann_zeta(double s);

// Standard normal quantile (inverse CDF). p in [0, 1]; the endpoints map to
// -inf/+inf. Acklam's rational approximation polished with one Halley step.
double normal_quantile(double p);

}  // namespace isl
