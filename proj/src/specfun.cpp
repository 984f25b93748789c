#include "isl/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace isl {

namespace {

constexpr double kLnSqrt2Pi = 0.91893853320467274178;

// Godfrey's 15-term Lanczos coefficients, g = 607/128.
constexpr double kLanczosG = 4.7421875;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

double ln_gamma_lanczos(double x) {
  // Valid for x >= 0.5.
  double s = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    s += kLanczos[i] / (x - 1.0 + static_cast<double>(i));
  }
  const double t = x + kLanczosG - 0.5;
  return (x - 0.5) * std::log(t) - t + kLnSqrt2Pi + std::log(s);
}

// B_{2j}/(2j)! for the Euler-Maclaurin zeta tail, j = 1..12.
constexpr std::array<double, 12> kBernoulliOverFact = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
};

}  // namespace

LogDomainValue LogDomainValue::from_linear(double v) {
  if (!(v > 0.0)) {
    throw std::domain_error("LogDomainValue requires a positive value");
  }
  return LogDomainValue{std::log(v)};
}

double LogDomainValue::linear() const {
  // log(DBL_MAX) = 709.78...; exp past that overflows to inf.
  static const double kMaxLog = std::log(std::numeric_limits<double>::max());
  if (log_magnitude > kMaxLog) {
    throw std::overflow_error("log-domain value " + std::to_string(log_magnitude) +
                              " exceeds the representable range");
  }
  return std::exp(log_magnitude);
}

double ln_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error("ln_gamma requires finite x > 0, got " + std::to_string(x));
  }
  if (x >= 0.5) {
    return ln_gamma_lanczos(x);
  }
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x), exact for x in (0, 0.5).
  return std::log(M_PI / std::sin(M_PI * x)) - ln_gamma_lanczos(1.0 - x);
}

double ln_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("ln_beta requires positive arguments");
  }
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

double ln_choose(double n, double r) {
  if (r < 0.0 || n < 0.0 || r > n) {
    throw std::domain_error("ln_choose requires 0 <= r <= n");
  }
  return ln_gamma(n + 1.0) - ln_gamma(r + 1.0) - ln_gamma(n - r + 1.0);
}

double generalized_harmonic(std::int64_t k, double kappa) {
  if (k < 1) {
    throw std::domain_error("generalized_harmonic requires k >= 1");
  }
  if (!(kappa >= 0.0)) {
    throw std::domain_error("generalized_harmonic requires kappa >= 0");
  }
  if (kappa == 0.0) {
    return static_cast<double>(k);
  }
  constexpr std::int64_t kDirectLimit = 1000000;
  if (k <= kDirectLimit || kappa <= 1.0) {
    // Smallest terms first so the accumulating sum loses no low-order bits.
    double sum = 0.0;
    for (std::int64_t i = k; i >= 1; --i) {
      sum += std::pow(static_cast<double>(i), -kappa);
    }
    return sum;
  }
  const double kd = static_cast<double>(k);
  return riemann_zeta(kappa) + (0.5 - kd / (kappa - 1.0)) * std::pow(kd, -kappa);
}

namespace {

// sum_{i=m+1}^{K} i^-kappa by Euler-Maclaurin; m must be large enough that
// the dropped B_6 term (~ kappa^5 m^-kappa-5 / 30240) is negligible.
double harmonic_segment(double m, double K, double kappa) {
  double integral;
  const double e = 1.0 - kappa;
  if (std::abs(e) < 0.5) {
    // (K^e - m^e)/e = m^e expm1(e log(K/m)) / e, stable through kappa = 1.
    const double r = e * std::log(K / m);
    integral = e == 0.0 ? std::log(K / m)
                        : std::pow(m, e) * std::expm1(r) / e;
  } else {
    integral = (std::pow(K, e) - std::pow(m, e)) / e;
  }
  const double fK = std::pow(K, -kappa);
  const double fm = std::pow(m, -kappa);
  double seg = integral + 0.5 * (fK - fm);
  seg -= (kappa / 12.0) * (fK / K - fm / m);
  seg += (kappa * (kappa + 1.0) * (kappa + 2.0) / 720.0) * (fK / (K * K * K) - fm / (m * m * m));
  return seg;
}

}  // namespace

std::vector<double> generalized_harmonic_batch(const std::vector<std::int64_t>& ks,
                                               double kappa) {
  if (!(kappa >= 0.0)) {
    throw std::domain_error("generalized_harmonic_batch requires kappa >= 0");
  }
  std::vector<double> out(ks.size());
  if (ks.empty()) return out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1 || (i > 0 && ks[i] <= ks[i - 1])) {
      throw std::domain_error("generalized_harmonic_batch requires strictly increasing k >= 1");
    }
  }
  if (kappa == 0.0) {
    for (std::size_t i = 0; i < ks.size(); ++i) out[i] = static_cast<double>(ks[i]);
    return out;
  }

  constexpr std::int64_t kAnchor = 4096;
  const std::int64_t direct_to = std::min(ks.back(), kAnchor);
  double sum = 0.0;
  std::size_t next = 0;
  for (std::int64_t i = 1; i <= direct_to; ++i) {
    sum += std::pow(static_cast<double>(i), -kappa);
    while (next < ks.size() && ks[next] == i) {
      out[next++] = sum;
    }
  }
  const double anchor_sum = sum;
  for (; next < ks.size(); ++next) {
    out[next] = anchor_sum + harmonic_segment(static_cast<double>(direct_to),
                                              static_cast<double>(ks[next]), kappa);
  }
  return out;
}

double riemann_zeta(double s) {
  if (!(s > 1.0)) {
    throw std::domain_error("riemann_zeta requires s > 1 (series diverges)");
  }
  constexpr int kCutoff = 24;
  double sum = 0.0;
  for (int n = kCutoff - 1; n >= 1; --n) {
    sum += std::pow(static_cast<double>(n), -s);
  }
  const double nd = static_cast<double>(kCutoff);
  sum += 0.5 * std::pow(nd, -s);
  sum += std::pow(nd, 1.0 - s) / (s - 1.0);
  // Correction terms B_{2j}/(2j)! * (s)(s+1)...(s+2j-2) * N^{-s-2j+1}.
  double rising = s;                         // (s)_{2j-1} built incrementally
  double npow = std::pow(nd, -s - 1.0);      // N^{-s-2j+1} at j = 1
  const double inv_n2 = 1.0 / (nd * nd);
  for (std::size_t j = 0; j < kBernoulliOverFact.size(); ++j) {
    const double term = kBernoulliOverFact[j] * rising * npow;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) {
      break;
    }
    const double m = s + static_cast<double>(2 * j + 1);
    rising *= m * (m + 1.0);
    npow *= inv_n2;
  }
  return sum;
}

double normal_quantile(double p) {
  if (!(p >= 0.0) || !(p <= 1.0)) {
    throw std::domain_error("normal_quantile requires p in [0, 1]");
  }
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  if (p == 1.0) return std::numeric_limits<double>::infinity();

  // Acklam's rational approximation.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley step against the exact CDF brings the error near machine eps.
  const double e = 0.5 * std::erfc(-x / M_SQRT2) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

}  // namespace isl
