#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "hardy/types.hpp"

namespace hardy {

struct Minimize1dResult {
  double point = 0.0;   // midpoint of the final bracket
  double lo = 0.0;      // bracket on the minimizer
  double hi = 0.0;
  i64 evaluations = 0;
  EstimateMethod method = EstimateMethod::derivative_bisection;
};

namespace detail {

// Golden-section search on [lo, hi]; assumes f is unimodal there.
template <class F>
Minimize1dResult golden_section(F&& f, double lo, double hi, double tol_c,
                                i64 max_evals, i64& evals) {
  constexpr double invphi  = 0.6180339887498949;
  constexpr double invphi2 = 0.3819660112501051;
  double a = lo, b = hi;
  double c = a + invphi2 * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  evals += 2;
  while (b - a > tol_c) {
    if (evals > max_evals)
      throw budget_error("golden_section: evaluation budget exhausted",
                         ConstantEstimate{(a + b) / 2, a, b,
                                          EstimateMethod::golden_section, evals});
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = a + invphi2 * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  Minimize1dResult r;
  r.lo = a; r.hi = b; r.point = (a + b) / 2;
  r.evaluations = evals;
  r.method = EstimateMethod::golden_section;
  return r;
}

}  // namespace detail

// Minimizes a strictly convex, coercive function of one real variable by
// sign-bisection on its derivative, starting the bracket hunt at c_init.
// Falls back to golden-section if the derivative misbehaves (non-finite).
template <class F, class DF>
Minimize1dResult minimize_convex(F&& f, DF&& df, double c_init, double tol_c,
                                 i64 max_evals = 1'000'000) {
  i64 evals = 0;
  double h = 1.0 + std::abs(c_init);
  double lo = c_init - h, hi = c_init + h;
  double dlo = df(lo), dhi = df(hi);
  evals += 2;

  if (!std::isfinite(dlo) || !std::isfinite(dhi))
    return detail::golden_section(f, lo - 64 * h, hi + 64 * h, tol_c,
                                  max_evals, evals);

  // Expand until the derivative changes sign across the bracket.
  while (dlo > 0.0) {
    hi = lo; dhi = dlo;
    h *= 4.0;
    lo -= h;
    dlo = df(lo);
    if (++evals > max_evals)
      throw budget_error("minimize_convex: bracket expansion budget exhausted",
                         ConstantEstimate{lo, lo, hi,
                                          EstimateMethod::derivative_bisection,
                                          evals});
    if (!std::isfinite(dlo))
      return detail::golden_section(f, lo, hi, tol_c, max_evals, evals);
  }
  while (dhi < 0.0) {
    lo = hi; dlo = dhi;
    h *= 4.0;
    hi += h;
    dhi = df(hi);
    if (++evals > max_evals)
      throw budget_error("minimize_convex: bracket expansion budget exhausted",
                         ConstantEstimate{hi, lo, hi,
                                          EstimateMethod::derivative_bisection,
                                          evals});
    if (!std::isfinite(dhi))
      return detail::golden_section(f, lo, hi, tol_c, max_evals, evals);
  }

  while (hi - lo > tol_c) {
    if (++evals > max_evals)
      throw budget_error("minimize_convex: bisection budget exhausted",
                         ConstantEstimate{(lo + hi) / 2, lo, hi,
                                          EstimateMethod::derivative_bisection,
                                          evals});
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;  // bracket at floating resolution
    const double dm = df(mid);
    if (!std::isfinite(dm))
      return detail::golden_section(f, lo, hi, tol_c, max_evals, evals);
    if (dm == 0.0) { lo = hi = mid; break; }
    (dm < 0.0 ? lo : hi) = mid;
  }

  Minimize1dResult r;
  r.lo = lo; r.hi = hi; r.point = lo + (hi - lo) / 2;
  r.evaluations = evals;
  r.method = EstimateMethod::derivative_bisection;
  return r;
}

struct Pattern2dResult {
  double x = 0.0, y = 0.0;
  double value = std::numeric_limits<double>::infinity();
  i64 evaluations = 0;
};

// Derivative-free compass/pattern refinement of a smooth 2-D objective
// around (x0, y0). Step halves on failure; stops once the step is
// negligible relative to the iterate.
template <class F>
Pattern2dResult pattern_search_2d(F&& f, double x0, double y0, double h0,
                                  i64 max_evals, i64& evals) {
  Pattern2dResult best{x0, y0, f(x0, y0), 0};
  ++evals;
  double h = h0;
  static constexpr double dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr double dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  while (h > 1e-13 * (1.0 + std::abs(best.x) + std::abs(best.y))) {
    bool moved = false;
    for (int k = 0; k < 8; ++k) {
      const double x = best.x + h * dx[k];
      const double y = best.y + h * dy[k];
      const double v = f(x, y);
      ++evals;
      if (evals > max_evals)
        throw budget_error("pattern_search_2d: evaluation budget exhausted",
                           ConstantEstimate{best.value, best.value, best.value,
                                            EstimateMethod::grid_refine, evals});
      if (v < best.value) {
        best.x = x; best.y = y; best.value = v;
        moved = true;
      }
    }
    if (!moved) h *= 0.5;
  }
  best.evaluations = evals;
  return best;
}

}  // namespace hardy
