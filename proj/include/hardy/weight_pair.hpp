#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "hardy/types.hpp"

namespace hardy {

// Index functions are evaluated in extended precision: weight generation
// takes differences of phi, and the extra mantissa bits keep the cancellation
// there below the documented tolerances.
using IndexFn = std::function<long double(i64)>;

// Supersolution data (v, phi) with the exponent p.
//
// Invariants, checkable over any queried range:
//   v(n) >= 0 for n >= 1,
//   phi(0) = 0, phi(n) > 0 for n >= 1,
//   phi non-decreasing -- required for p != 2 only. At p = 2 the underlying
//   algebraic identity holds for every real step, so a merely positive phi
//   is admissible there.
struct WeightPair {
  IndexFn v;
  IndexFn phi;
  Exponent p;

  long double dphi(i64 n) const { return phi(n) - phi(n - 1); }
};

inline void check_weight_pair(const WeightPair& wp, i64 lo, i64 hi) {
  if (lo <= 0) {
    if (wp.phi(0) != 0.0L)
      throw std::invalid_argument("WeightPair: phi(0) = 0 required");
    lo = 1;
  }
  const bool need_monotone = wp.p.value() != 2.0;
  long double prev = (lo >= 2) ? wp.phi(lo - 1) : 0.0L;
  for (i64 n = lo; n <= hi; ++n) {
    const long double pn = wp.phi(n);
    if (!std::isfinite(static_cast<double>(pn)) || pn <= 0.0L)
      throw std::invalid_argument("WeightPair: phi must be positive at n = " +
                                  std::to_string(n));
    if (need_monotone && pn < prev)
      throw std::invalid_argument(
          "WeightPair: phi must be non-decreasing (violated at n = " +
          std::to_string(n) + ")");
    const long double vn = wp.v(n);
    if (!std::isfinite(static_cast<double>(vn)) || vn < 0.0L)
      throw std::invalid_argument("WeightPair: v must be non-negative at n = " +
                                  std::to_string(n));
    prev = pn;
  }
}

// v(n) = n^alpha, phi(n) = n^beta with phi(0) = 0.
inline WeightPair power_pair(Exponent p, double alpha, double beta) {
  return WeightPair{
      [alpha](i64 n) { return powl(static_cast<long double>(n), alpha); },
      [beta](i64 n) -> long double {
        if (n == 0) return 0.0L;
        return powl(static_cast<long double>(n), beta);
      },
      p};
}

inline IndexFn constant_one() {
  return [](i64) -> long double { return 1.0L; };
}

// Wraps a table covering indices [0, table.size() - 1]; out-of-range queries
// throw, which keeps truncation bugs loud.
inline IndexFn tabulated(std::vector<long double> table) {
  return [tab = std::move(table)](i64 n) -> long double {
    if (n < 0 || static_cast<std::size_t>(n) >= tab.size())
      throw std::out_of_range("tabulated index function: n = " +
                              std::to_string(n) + " outside table");
    return tab[static_cast<std::size_t>(n)];
  };
}

}  // namespace hardy
