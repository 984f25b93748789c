#include "isl/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "isl/specfun.hpp"

namespace isl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCeilingMargin = 1e-6;

using Vec3 = std::array<double, 3>;

struct NelderMeadResult {
  Vec3 x;
  double f = kInf;
  int iterations = 0;
  bool converged = false;
};

// Simplex search in the subspace of dimensions with positive box width;
// zero-width dimensions stay frozen at their bound. Out-of-box points
// evaluate to +inf, which the contraction steps pull back inside.
NelderMeadResult nelder_mead(const std::function<double(const Vec3&)>& f, const Vec3& start,
                             const Vec3& lb, const Vec3& ub, int max_iter) {
  std::vector<int> active;
  for (int d = 0; d < 3; ++d) {
    if (ub[d] > lb[d]) active.push_back(d);
  }
  const int n = static_cast<int>(active.size());

  auto expand = [&](const std::vector<double>& xa) {
    Vec3 full = start;
    for (int i = 0; i < n; ++i) full[active[static_cast<std::size_t>(i)]] = xa[static_cast<std::size_t>(i)];
    return full;
  };
  auto eval = [&](const std::vector<double>& xa) {
    const Vec3 full = expand(xa);
    for (int d = 0; d < 3; ++d) {
      if (full[d] < lb[d] || full[d] > ub[d]) return kInf;
    }
    return f(full);
  };

  NelderMeadResult out;
  if (n == 0) {  // fully frozen box
    out.x = start;
    out.f = eval({});
    out.converged = true;
    return out;
  }

  std::vector<std::vector<double>> simplex;
  std::vector<double> x0(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x0[static_cast<std::size_t>(i)] = start[active[static_cast<std::size_t>(i)]];
  simplex.push_back(x0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> v = x0;
    const int d = active[static_cast<std::size_t>(i)];
    const double step = 0.05 * (ub[d] - lb[d]);
    v[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] + step <= ub[d]
                                         ? v[static_cast<std::size_t>(i)] + step
                                         : v[static_cast<std::size_t>(i)] - step;
    simplex.push_back(v);
  }
  std::vector<double> fv(simplex.size());
  for (std::size_t i = 0; i < simplex.size(); ++i) fv[i] = eval(simplex[i]);

  const std::size_t last = simplex.size() - 1;
  std::vector<std::size_t> order(simplex.size());
  int it = 0;
  for (; it < max_iter; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    {
      std::vector<std::vector<double>> s2(simplex.size());
      std::vector<double> f2(simplex.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        s2[i] = simplex[order[i]];
        f2[i] = fv[order[i]];
      }
      simplex.swap(s2);
      fv.swap(f2);
    }

    double spread = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      for (int d = 0; d < n; ++d) {
        spread = std::max(spread, std::abs(simplex[i][static_cast<std::size_t>(d)] -
                                           simplex[0][static_cast<std::size_t>(d)]));
      }
    }
    if (std::isfinite(fv[0]) && fv[last] - fv[0] <= 1e-15 * (1.0 + std::abs(fv[0])) &&
        spread <= 1e-12 * (1.0 + std::abs(simplex[0][0]))) {
      out.converged = true;
      break;
    }

    std::vector<double> centroid(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < last; ++i) {
      for (int d = 0; d < n; ++d) centroid[static_cast<std::size_t>(d)] += simplex[i][static_cast<std::size_t>(d)];
    }
    for (int d = 0; d < n; ++d) centroid[static_cast<std::size_t>(d)] /= static_cast<double>(last);

    auto along = [&](double t) {
      std::vector<double> p(static_cast<std::size_t>(n));
      for (int d = 0; d < n; ++d) {
        p[static_cast<std::size_t>(d)] = centroid[static_cast<std::size_t>(d)] +
                                         t * (centroid[static_cast<std::size_t>(d)] -
                                              simplex[last][static_cast<std::size_t>(d)]);
      }
      return p;
    };

    const std::vector<double> xr = along(1.0);
    const double fr = eval(xr);
    if (fr < fv[0]) {
      const std::vector<double> xe = along(2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[last] = xe;
        fv[last] = fe;
      } else {
        simplex[last] = xr;
        fv[last] = fr;
      }
    } else if (fr < fv[last - 1]) {
      simplex[last] = xr;
      fv[last] = fr;
    } else {
      const bool outside = fr < fv[last];
      const std::vector<double> xc = outside ? along(0.5) : along(-0.5);
      const double fc = eval(xc);
      if (outside ? fc <= fr : fc < fv[last]) {
        simplex[last] = xc;
        fv[last] = fc;
      } else {
        for (std::size_t i = 1; i <= last; ++i) {
          for (int d = 0; d < n; ++d) {
            simplex[i][static_cast<std::size_t>(d)] =
                simplex[0][static_cast<std::size_t>(d)] +
                0.5 * (simplex[i][static_cast<std::size_t>(d)] -
                       simplex[0][static_cast<std::size_t>(d)]);
          }
          fv[i] = eval(simplex[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < fv.size(); ++i) {
    if (fv[i] < fv[best]) best = i;
  }
  out.x = expand(simplex[best]);
  out.f = fv[best];
  out.iterations = it;
  return out;
}

// Anchor values for the multi-start grid: 10%/50%/90% of the box, on a log
// scale for scale-type parameters.
std::array<double, 3> anchors(double lo, double hi, bool log_scale) {
  if (hi <= lo) return {lo, lo, lo};
  if (log_scale && lo > 0.0) {
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    return {std::exp(llo + 0.1 * (lhi - llo)), std::exp(0.5 * (llo + lhi)),
            std::exp(lhi - 0.1 * (lhi - llo))};
  }
  return {lo + 0.1 * (hi - lo), 0.5 * (lo + hi), hi - 0.1 * (hi - lo)};
}

// Cartesian {low, mid, high} grid pruned to 8 fixed starts: the three
// diagonal corners plus a Latin-square spread of the mixed combinations.
constexpr std::array<std::array<int, 3>, 8> kStartPicks = {{
    {1, 1, 1}, {0, 0, 0}, {2, 2, 2}, {0, 1, 2}, {2, 1, 0}, {1, 0, 2}, {1, 2, 0}, {0, 2, 1},
}};

struct Engine {
  std::function<std::vector<double>(const Vec3&)> predict;  // params -> coverage
  Vec3 lb;
  Vec3 ub;
  std::array<bool, 3> log_scale;
  int max_iter_per_start = 4000;
};

struct EngineResult {
  Vec3 x;
  double objective = kInf;
  Eigen::VectorXd residuals;
  bool converged = false;
  int iterations = 0;
};

EngineResult run_engine(const Engine& engine, const CoverageCurve& curve,
                        FitObjective objective) {
  const std::size_t n_pts = curve.size();

  auto residuals_at = [&](const Vec3& x, const std::vector<double>& weights,
                          Eigen::VectorXd* out) -> double {
    const std::vector<double> pred = engine.predict(x);
    double ss = 0.0;
    if (out != nullptr) out->resize(static_cast<Eigen::Index>(n_pts));
    for (std::size_t i = 0; i < n_pts; ++i) {
      double r;
      if (objective == FitObjective::kLinear) {
        r = pred[i] - curve.coverage[i];
      } else {
        const double ceiling = x[0];
        const double cp = ceiling - pred[i];
        const double co = ceiling - curve.coverage[i];
        if (cp <= 0.0) return kInf;
        if (co <= 0.0) {
          // Only reachable when the ceiling box is pinned at 1 and an
          // observation sits exactly at 1; that point carries no signal on
          // this scale.
          r = 0.0;
        } else {
          r = std::log(cp) - std::log(co);
        }
        r *= weights[i];
      }
      ss += r * r;
      if (out != nullptr) (*out)[static_cast<Eigen::Index>(i)] = r;
    }
    return ss;
  };

  auto best_of_starts = [&](const std::vector<double>& weights) {
    const auto anchor_a = anchors(engine.lb[0], engine.ub[0], engine.log_scale[0]);
    const auto anchor_b = anchors(engine.lb[1], engine.ub[1], engine.log_scale[1]);
    const auto anchor_c = anchors(engine.lb[2], engine.ub[2], engine.log_scale[2]);
    auto obj = [&](const Vec3& x) { return residuals_at(x, weights, nullptr); };

    NelderMeadResult best;
    int total_iters = 0;
    for (const auto& pick : kStartPicks) {
      const Vec3 start = {anchor_a[static_cast<std::size_t>(pick[0])],
                          anchor_b[static_cast<std::size_t>(pick[1])],
                          anchor_c[static_cast<std::size_t>(pick[2])]};
      NelderMeadResult r =
          nelder_mead(obj, start, engine.lb, engine.ub, engine.max_iter_per_start);
      total_iters += r.iterations;
      if (r.f < best.f) best = r;
    }
    best.iterations = total_iters;
    return best;
  };

  const std::vector<double> unit(n_pts, 1.0);
  NelderMeadResult pass1 = best_of_starts(unit);
  NelderMeadResult final = pass1;
  std::vector<double> weights = unit;

  if (objective == FitObjective::kLogComplement && std::isfinite(pass1.f)) {
    // Whitening pass: scale each residual by (A - pred)/pred of the first
    // fit, the leading-order noise factor of log(A - obs) under
    // multiplicative coverage noise. Capped so near-zero predictions cannot
    // dominate the objective.
    const std::vector<double> pred = engine.predict(pass1.x);
    for (std::size_t i = 0; i < n_pts; ++i) {
      weights[i] = std::min(10.0, (pass1.x[0] - pred[i]) / std::max(pred[i], 1e-9));
    }
    NelderMeadResult pass2 = best_of_starts(weights);
    pass2.iterations += pass1.iterations;
    final = pass2;
  }

  EngineResult out;
  out.x = final.x;
  out.converged = final.converged;
  out.iterations = final.iterations;
  out.objective = residuals_at(final.x, weights, &out.residuals);
  return out;
}

void require_fittable(const CoverageCurve& curve) {
  curve.validate();
  if (curve.size() < 4) {
    throw std::invalid_argument("fit requires a curve with at least 4 points, got " +
                                std::to_string(curve.size()));
  }
}

double ceiling_floor(const CoverageCurve& curve) {
  return std::min(curve.max_coverage() + kCeilingMargin, 1.0);
}

template <typename ModelT>
GoodnessOfFit goodness_impl(const CoverageCurve& curve, const ModelT& model,
                            const std::vector<double>& pred) {
  GoodnessOfFit g;
  double ss = 0.0;
  bool log_ok = true;
  double sy = 0.0, syy = 0.0, sr = 0.0;
  std::vector<double> ylog(curve.size()), yhat(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double err = pred[i] - curve.coverage[i];
    ss += err * err;
    g.max_abs_err = std::max(g.max_abs_err, std::abs(err));
    const double co = model.ceiling - curve.coverage[i];
    const double cp = model.ceiling - pred[i];
    if (co <= 0.0 || cp <= 0.0) {
      log_ok = false;
    } else {
      ylog[i] = std::log(co);
      yhat[i] = std::log(cp);
    }
  }
  g.rmse = std::sqrt(ss / static_cast<double>(curve.size()));
  if (!log_ok) {
    g.warning = "coverage reaches the ceiling at some point; log-space r2 omitted";
    return g;
  }
  for (std::size_t i = 0; i < curve.size(); ++i) {
    sy += ylog[i];
    syy += ylog[i] * ylog[i];
    sr += (ylog[i] - yhat[i]) * (ylog[i] - yhat[i]);
  }
  const double n = static_cast<double>(curve.size());
  const double ss_tot = syy - sy * sy / n;
  g.r2_logspace = ss_tot > 0.0 ? 1.0 - sr / ss_tot : (sr == 0.0 ? 1.0 : 0.0);
  return g;
}

}  // namespace

std::vector<double> predict_curve(const BetaFailureModel& model,
                                  const std::vector<std::int64_t>& ks) {
  std::vector<double> out(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out[i] = pass_at_k_exact(model, ks[i]);
  }
  return out;
}

std::vector<double> predict_curve(const CorrelatedTrialModel& model,
                                  const std::vector<std::int64_t>& ks) {
  model.validate();
  const std::vector<double> keff = generalized_harmonic_batch(ks, model.kappa);
  std::vector<double> out(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out[i] = model.ceiling * (1.0 - std::pow(model.failure, keff[i]));
  }
  return out;
}

ParameterBox default_beta_bounds(const CoverageCurve& curve) {
  return ParameterBox{{ceiling_floor(curve), 0.05, 0.05}, {1.0, 50.0, 5.0}};
}

ParameterBox default_correlated_bounds(const CoverageCurve& curve) {
  return ParameterBox{{ceiling_floor(curve), 1e-9, 0.0}, {1.0, 1.0 - 1e-9, 5.0}};
}

FitResult<BetaFailureModel> fit_beta_model(const CoverageCurve& curve, FitObjective objective,
                                           const std::optional<ParameterBox>& bounds) {
  require_fittable(curve);
  ParameterBox box = bounds.value_or(default_beta_bounds(curve));
  box.lower[0] = std::max(box.lower[0], ceiling_floor(curve));
  box.upper[0] = std::min(box.upper[0], 1.0);
  if (box.lower[0] > box.upper[0]) box.lower[0] = box.upper[0];

  Engine engine;
  engine.lb = box.lower;
  engine.ub = box.upper;
  engine.log_scale = {false, true, true};
  engine.predict = [&curve](const Vec3& x) {
    return predict_curve(BetaFailureModel{x[0], x[1], x[2]}, curve.k);
  };
  const EngineResult r = run_engine(engine, curve, objective);

  FitResult<BetaFailureModel> fit;
  fit.model = BetaFailureModel{r.x[0], r.x[1], r.x[2]};
  fit.objective_value = r.objective;
  fit.converged = r.converged && std::isfinite(r.objective);
  fit.iterations = r.iterations;
  fit.residuals = r.residuals;
  return fit;
}

FitResult<CorrelatedTrialModel> fit_correlated_model(const CoverageCurve& curve,
                                                     const std::optional<ParameterBox>& bounds) {
  require_fittable(curve);
  ParameterBox box = bounds.value_or(default_correlated_bounds(curve));
  box.lower[0] = std::max(box.lower[0], ceiling_floor(curve));
  box.upper[0] = std::min(box.upper[0], 1.0);
  if (box.lower[0] > box.upper[0]) box.lower[0] = box.upper[0];

  Engine engine;
  engine.lb = box.lower;
  engine.ub = box.upper;
  engine.log_scale = {false, false, false};
  engine.predict = [&curve](const Vec3& x) {
    return predict_curve(CorrelatedTrialModel{x[0], x[1], x[2]}, curve.k);
  };
  const EngineResult r = run_engine(engine, curve, FitObjective::kLogComplement);

  FitResult<CorrelatedTrialModel> fit;
  fit.model = CorrelatedTrialModel{r.x[0], r.x[1], r.x[2]};
  fit.objective_value = r.objective;
  fit.converged = r.converged && std::isfinite(r.objective);
  fit.iterations = r.iterations;
  fit.residuals = r.residuals;
  fit.degenerate = fit.model.failure >= 1.0 - 1e-9;
  return fit;
}

GoodnessOfFit goodness_of_fit(const CoverageCurve& curve, const BetaFailureModel& model) {
  curve.validate();
  return goodness_impl(curve, model, predict_curve(model, curve.k));
}

GoodnessOfFit goodness_of_fit(const CoverageCurve& curve, const CorrelatedTrialModel& model) {
  curve.validate();
  return goodness_impl(curve, model, predict_curve(model, curve.k));
}

}  // namespace isl
