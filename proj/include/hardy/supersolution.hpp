#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "hardy/cp.hpp"
#include "hardy/seq.hpp"
#include "hardy/sum.hpp"
#include "hardy/types.hpp"
#include "hardy/weight_pair.hpp"

namespace hardy {

// Per-index and aggregate breakdown of the weighted difference identity
//   sum v(n)|u(n)-u(n-1)|^p = sum w(n)|u(n)|^p + sum v(n) R_p(n),
// with w generated from (v, phi) by hardy_weight.
struct VerificationReport {
  double lhs = 0.0;            // sum of v(n) |u(n) - u(n-1)|^p
  double weight_sum = 0.0;     // sum of w(n) |u(n)|^p
  double remainder_sum = 0.0;  // sum over n >= 2 of v(n) R_p(n)
  double residual = 0.0;       // lhs - weight_sum - remainder_sum

  struct IndexTerm {
    i64 n = 0;
    double lhs_term = 0.0;
    double weight_term = 0.0;
    double remainder_term = 0.0;
  };
  std::vector<IndexTerm> per_index;

  // Generated weights may be negative for adversarial (v, phi); the identity
  // still holds, so these are flagged rather than rejected.
  std::vector<i64> negative_weight_indices;

  i64 truncation = 0;  // all sums were cut at this index; later terms vanish

  double scale() const {
    return std::abs(lhs) + std::abs(weight_sum) + std::abs(remainder_sum);
  }
};

namespace detail {

inline long double pow_step(long double d, double pm1) {
  if (pm1 == 1.0) return d;  // p = 2; d may be negative there
  return powl(d, static_cast<long double>(pm1));
}

// w(n) = [v(n) dphi(n)^{p-1} - v(n+1) dphi(n+1)^{p-1}] / phi(n)^{p-1}
// from the five window values around n.
inline double hardy_weight_window(long double vn, long double vn1,
                                  long double phim, long double phin,
                                  long double phin1, double pv, i64 n) {
  const double pm1 = pv - 1.0;
  if (!(phin > 0.0L))
    throw std::invalid_argument("hardy_weight: phi(n) > 0 required at n = " +
                                std::to_string(n));
  const long double d1 = phin - phim;
  const long double d2 = phin1 - phin;
  if (pm1 != 1.0 && (d1 < 0.0L || d2 < 0.0L))
    throw std::invalid_argument(
        "hardy_weight: decreasing phi requires p = 2 (n = " +
        std::to_string(n) + ")");
  const long double num = vn * pow_step(d1, pm1) - vn1 * pow_step(d2, pm1);
  return static_cast<double>(num / pow_step(phin, pm1));
}

inline double hardy_weight_tab(const std::vector<long double>& v,
                               const std::vector<long double>& phi, double pv,
                               i64 n) {
  const auto k = static_cast<std::size_t>(n);
  return hardy_weight_window(v[k], v[k + 1], phi[k - 1], phi[k], phi[k + 1],
                             pv, n);
}

inline std::vector<long double> tabulate(const IndexFn& f, i64 hi) {
  std::vector<long double> out(static_cast<std::size_t>(hi) + 1);
  for (i64 n = 0; n <= hi; ++n) out[static_cast<std::size_t>(n)] = f(n);
  return out;
}

}  // namespace detail

// Hardy weight generated by taking the supersolution condition with
// equality at index n. May be negative; callers flag rather than reject.
inline double hardy_weight(const WeightPair& wp, i64 n) {
  if (n < 1) throw std::invalid_argument("hardy_weight: n >= 1 required");
  const long double phim = (n == 1) ? 0.0L : wp.phi(n - 1);
  return detail::hardy_weight_window(wp.v(n), wp.v(n + 1), phim, wp.phi(n),
                                     wp.phi(n + 1), wp.p.value(), n);
}

// Slack of the supersolution condition against a candidate weight w:
//   slack(n) = v(n) dphi(n)^{p-1} - v(n+1) dphi(n+1)^{p-1} - w(n) phi(n)^{p-1}.
// The condition holds on the range iff every slack is >= -abs_tol.
inline std::vector<std::pair<i64, double>> check_condition(
    const WeightPair& wp, const std::function<double(i64)>& w, i64 lo, i64 hi) {
  if (lo < 1 || hi < lo)
    throw std::invalid_argument("check_condition: need 1 <= lo <= hi");
  const double pv = wp.p.value();
  const double pm1 = pv - 1.0;
  std::vector<std::pair<i64, double>> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  long double phi_prev = (lo == 1) ? 0.0L : wp.phi(lo - 1);
  long double phi_n = wp.phi(lo);
  for (i64 n = lo; n <= hi; ++n) {
    const long double phi_next = wp.phi(n + 1);
    if (!(phi_n > 0.0L))
      throw std::invalid_argument("check_condition: phi(n) > 0 required");
    const long double d1 = phi_n - phi_prev;
    const long double d2 = phi_next - phi_n;
    if (pm1 != 1.0 && (d1 < 0.0L || d2 < 0.0L))
      throw std::invalid_argument(
          "check_condition: decreasing phi requires p = 2");
    const long double slack = wp.v(n) * detail::pow_step(d1, pm1) -
                              wp.v(n + 1) * detail::pow_step(d2, pm1) -
                              static_cast<long double>(w(n)) *
                                  detail::pow_step(phi_n, pm1);
    out.emplace_back(n, static_cast<double>(slack));
    phi_prev = phi_n;
    phi_n = phi_next;
  }
  return out;
}

namespace detail {

// R_p at index n >= 2 from plain double values; phi_nm1 > 0, phi_n > 0.
inline double remainder_at(cx un, cx unm1, double phi_nm1, double phi_n,
                           Exponent p) {
  const double pv = p.value();
  const double t = phi_nm1 / phi_n;
  const double first = cp_value(un - unm1, t * un - unm1, p);
  const double d1 = phi_n - phi_nm1;
  if (pv != 2.0 && d1 < 0.0)
    throw std::invalid_argument("remainder: decreasing phi requires p = 2");
  const double factor = phi_nm1 * (pv == 2.0 ? d1 : std::pow(d1, pv - 1.0));
  const cx psi_nm1 = unm1 / phi_nm1;
  const double second = factor * cp_value(psi_nm1, psi_nm1 - un / phi_n, p);
  return clamp_nonneg(first + second, std::abs(first) + std::abs(second));
}

}  // namespace detail

// Sharp remainder R_p(u(n), phi(n)); zero at n = 1 by convention, and a sum
// of C_p values with non-negative factors for n >= 2, hence non-negative.
inline double remainder(const FinSeq& u, const WeightPair& wp, i64 n) {
  if (n < 1) throw std::invalid_argument("remainder: n >= 1 required");
  if (n == 1) return 0.0;
  const double phi_nm1 = static_cast<double>(wp.phi(n - 1));
  const double phi_n = static_cast<double>(wp.phi(n));
  if (!(phi_nm1 > 0.0) || !(phi_n > 0.0))
    throw std::invalid_argument("remainder: phi > 0 required on {n-1, n}");
  return detail::remainder_at(u(n), u(n - 1), phi_nm1, phi_n, wp.p);
}

// Residual of the per-index decomposition
//   |u(n)-u(n-1)|^p = dphi(n)^{p-1} (phi(n)|psi(n)|^p - phi(n-1)|psi(n-1)|^p)
//                     + R_p(n),
// with psi(n) = u(n)/phi(n), psi(0) = 0, R_p(1) = 0. Zero up to rounding.
inline double pointwise_identity_residual(const FinSeq& u, const WeightPair& wp,
                                          i64 n) {
  if (n < 1)
    throw std::invalid_argument("pointwise_identity_residual: n >= 1 required");
  const double pv = wp.p.value();
  const double phi_n = static_cast<double>(wp.phi(n));
  if (!(phi_n > 0.0))
    throw std::invalid_argument("pointwise_identity_residual: phi(n) > 0");
  const double phi_nm1 = (n == 1) ? 0.0 : static_cast<double>(wp.phi(n - 1));
  const double d1 = phi_n - phi_nm1;
  if (pv != 2.0 && d1 < 0.0)
    throw std::invalid_argument(
        "pointwise_identity_residual: decreasing phi requires p = 2");
  const double psi_n_pow = phi_n * std::pow(std::abs(u(n)) / phi_n, pv);
  const double psi_nm1_pow =
      (n == 1) ? 0.0
               : phi_nm1 * std::pow(std::abs(u(n - 1)) / phi_nm1, pv);
  const double dpow = (pv == 2.0) ? d1 : std::pow(d1, pv - 1.0);
  const double telescoped = dpow * (psi_n_pow - psi_nm1_pow);
  const double rp = remainder(u, wp, n);
  return std::pow(std::abs(u(n) - u(n - 1)), pv) - telescoped - rp;
}

// Evaluates both sides of the weighted identity on a finitely supported u.
// All series are truncated at max_support(u) + 1; past that index u
// vanishes, so every summand is exactly zero. Terms are accumulated by
// pairwise summation (documented reduction order).
inline VerificationReport verify_identity(const FinSeq& u,
                                          const WeightPair& wp) {
  const i64 nmax = u.max_support();
  const i64 cut = nmax + 1;
  check_weight_pair(wp, 0, cut + 1);

  const auto vtab = detail::tabulate(wp.v, cut + 1);
  const auto phitab = detail::tabulate(wp.phi, cut + 1);
  const double pv = wp.p.value();

  VerificationReport rep;
  rep.truncation = cut;
  rep.per_index.reserve(static_cast<std::size_t>(cut));
  std::vector<double> lhs_terms, w_terms, r_terms;
  lhs_terms.reserve(static_cast<std::size_t>(cut));
  w_terms.reserve(static_cast<std::size_t>(cut));
  r_terms.reserve(static_cast<std::size_t>(cut));

  for (i64 n = 1; n <= cut; ++n) {
    const auto k = static_cast<std::size_t>(n);
    const double vn = static_cast<double>(vtab[k]);
    const double lhs_n = vn * std::pow(std::abs(u(n) - u(n - 1)), pv);
    double w_n = 0.0;
    if (n <= nmax && u(n) != cx{}) {
      const double w = detail::hardy_weight_tab(vtab, phitab, pv, n);
      if (w < 0.0) rep.negative_weight_indices.push_back(n);
      w_n = w * std::pow(std::abs(u(n)), pv);
    }
    double r_n = 0.0;
    if (n >= 2)
      r_n = vn * detail::remainder_at(u(n), u(n - 1),
                                      static_cast<double>(phitab[k - 1]),
                                      static_cast<double>(phitab[k]), wp.p);
    lhs_terms.push_back(lhs_n);
    w_terms.push_back(w_n);
    r_terms.push_back(r_n);
    rep.per_index.push_back({n, lhs_n, w_n, r_n});
  }

  rep.lhs = pairwise_sum(lhs_terms);
  rep.weight_sum = pairwise_sum(w_terms);
  rep.remainder_sum = pairwise_sum(r_terms);
  if (!std::isfinite(rep.lhs) || !std::isfinite(rep.weight_sum) ||
      !std::isfinite(rep.remainder_sum))
    throw std::overflow_error("verify_identity: series overflow");
  rep.residual = rep.lhs - rep.weight_sum - rep.remainder_sum;
  return rep;
}

}  // namespace hardy
