#pragma once

#include <cmath>
#include <vector>

#include "hardy/minimize.hpp"
#include "hardy/types.hpp"

namespace hardy {

namespace detail {

// C_p(xi, eta) = |xi|^p - |xi-eta|^p - p |xi-eta|^{p-2} Re((xi-eta) conj(eta)),
// unclamped. When xi == eta the last factor is taken as its limit 0: the real
// part vanishes linearly in |xi-eta| while the power grows slower, so the
// whole term tends to 0 for every p > 1.
inline double cp_value_raw(cx xi, cx eta, Exponent p) {
  require_finite(xi, "cp_value: xi");
  require_finite(eta, "cp_value: eta");
  const double pv = p.value();
  const cx d = xi - eta;
  const double ad = std::abs(d);
  double cross = 0.0;
  if (ad != 0.0) {
    const double re = d.real() * eta.real() + d.imag() * eta.imag();
    cross = pv * std::pow(ad, pv - 2.0) * re;
  }
  return std::pow(std::abs(xi), pv) - std::pow(ad, pv) - cross;
}

inline double cp_scale(cx xi, cx eta, Exponent p) {
  const double pv = p.value();
  const cx d = xi - eta;
  const double ad = std::abs(d);
  double cross = 0.0;
  if (ad != 0.0)
    cross = pv * std::pow(ad, pv - 2.0) * std::abs(d) * std::abs(eta);
  return std::pow(std::abs(xi), pv) + std::pow(ad, pv) + cross;
}

}  // namespace detail

// The convexity-gap functional of t -> |t|^p; non-negative for all complex
// arguments and homogeneous of degree p. Rounding-level negatives are
// clamped to zero.
inline double cp_value(cx xi, cx eta, Exponent p) {
  return clamp_nonneg(detail::cp_value_raw(xi, eta, p),
                      detail::cp_scale(xi, eta, p));
}

// Ratio whose infimum over (s, t) != (0, 0) is the sharp constant c1(p) in
// C_p(xi, eta) >= c1(p) |eta|^p for p >= 2:
//
//   ([t^2 + s^2 + 2s + 1]^{p/2} - 1 - p s) / (t^2 + s^2)^{p/2}.
//
// Even in t. Near the origin the numerator is evaluated through
// expm1/log1p to avoid cancellation.
inline double cp_lower_objective(double s, double t, Exponent p) {
  const double pv = p.value();
  const double a2 = t * t + s * s;
  if (a2 == 0.0)
    throw std::domain_error("cp_lower_objective: (s, t) must be nonzero");
  const double u = 2.0 * s + a2;  // bracket = 1 + u, always >= 0
  double num;
  if (std::abs(u) < 0.5)
    num = std::expm1(0.5 * pv * std::log1p(u)) - pv * s;
  else
    num = std::pow(1.0 + u, 0.5 * pv) - 1.0 - pv * s;
  return num / std::pow(a2, 0.5 * pv);
}

// Estimates c1(p) = inf of cp_lower_objective for p >= 2 by a log-spaced
// polar grid followed by pattern refinement. The domain is unbounded; the
// search is compactified by the radius cutoff below, and the limit value 1
// (the ratio tends to 1 as the radius grows) always enters as a candidate,
// so the reported value never exceeds 1. The bracket is
// [value - tol, value]: the infimum may only be approached asymptotically,
// so the lower end is conservative rather than certified.
inline ConstantEstimate cp_lower_constant(Exponent p, double tol,
                                          i64 max_evals = 10'000'000) {
  p.require_at_least(2.0, "cp_lower_constant");
  if (!(tol > 0.0)) throw std::domain_error("cp_lower_constant: tol > 0 required");

  constexpr double kRadiusMin = 1e-4;
  constexpr double kRadiusMax = 1e3;
  constexpr int kRadiusSteps = 160;
  constexpr int kAngleSteps = 181;

  i64 evals = 0;
  const auto objective = [&](double s, double t) {
    return cp_lower_objective(s, std::abs(t), p);
  };

  double best = 1.0;  // limit candidate (radius -> infinity)
  double bs = 0.0, bt = 0.0;
  bool interior = false;
  const double lstep =
      std::log(kRadiusMax / kRadiusMin) / (kRadiusSteps - 1);
  for (int i = 0; i < kRadiusSteps; ++i) {
    const double r = kRadiusMin * std::exp(lstep * i);
    for (int j = 0; j < kAngleSteps; ++j) {
      const double th = M_PI * j / (kAngleSteps - 1);
      const double s = r * std::cos(th);
      const double t = r * std::sin(th);
      const double v = objective(s, t);
      if (++evals > max_evals)
        throw budget_error("cp_lower_constant: budget exhausted in grid scan",
                           ConstantEstimate{best, best - tol, best,
                                            EstimateMethod::grid_refine, evals});
      if (v < best) {
        best = v; bs = s; bt = t;
        interior = true;
      }
    }
  }

  if (interior) {
    const double h0 = 0.25 * std::max(1.0, std::hypot(bs, bt));
    const auto refined = pattern_search_2d(objective, bs, bt, h0,
                                           max_evals, evals);
    best = std::min(best, refined.value);
  }

  ConstantEstimate est;
  est.value = std::min(best, 1.0);
  est.upper = est.value;
  est.lower = est.value - tol;
  while (est.upper - est.lower > tol)  // keep the width invariant exact
    est.lower = std::nextafter(est.lower, est.upper);
  est.method = EstimateMethod::grid_refine;
  est.evaluations = evals;
  return est;
}

// Residual of the exact decomposition
//   |a - t|^p - (1-t)^{p-1} (|a|^p - t)
//     = C_p(a - t, t(a-1)) + t (1-t)^{p-1} C_p(1, 1-a)
// for complex a and t in [0, 1]. At p = 2 the identity extends to every
// real t (both sides are polynomial in t), so the range check is waived.
inline double algebraic_identity_residual(cx a, double t, Exponent p) {
  require_finite(a, "algebraic_identity_residual: a");
  require_finite(t, "algebraic_identity_residual: t");
  const double pv = p.value();
  if ((t < 0.0 || t > 1.0) && pv != 2.0)
    throw std::domain_error(
        "algebraic_identity_residual: t must lie in [0, 1] unless p = 2");
  const double omt_pow = std::pow(1.0 - t, pv - 1.0);
  const double lhs =
      std::pow(std::abs(a - t), pv) - omt_pow * (std::pow(std::abs(a), pv) - t);
  const double rhs = detail::cp_value_raw(a - t, t * (a - 1.0), p) +
                     t * omt_pow * detail::cp_value_raw(cx{1.0}, 1.0 - a, p);
  return lhs - rhs;
}

// Residual of |a - t|^2 - (1-t)(|a|^2 - t) = t |a-1|^2, valid for all real t.
inline double simplified_p2_residual(cx a, double t) {
  require_finite(a, "simplified_p2_residual: a");
  require_finite(t, "simplified_p2_residual: t");
  return std::norm(a - t) - (1.0 - t) * (std::norm(a) - t) -
         t * std::norm(a - 1.0);
}

}  // namespace hardy
