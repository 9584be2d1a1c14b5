#pragma once

#include <cmath>
#include <vector>

#include "hardy/seq.hpp"
#include "hardy/sum.hpp"
#include "hardy/supersolution.hpp"
#include "hardy/types.hpp"
#include "hardy/weight_pair.hpp"

namespace hardy {

// Parameters of the power family v(n) = n^alpha, phi(n) = n^beta.
// beta > 0 is required in general; beta < 0 is admitted at p = 2 only, where
// the underlying identity extends to arbitrary real steps of phi.
struct FamilyParams {
  FamilyParams(Exponent p_, double alpha_, double beta_)
      : p(p_), alpha(alpha_), beta(beta_) {
    require_finite(alpha, "FamilyParams: alpha");
    require_finite(beta, "FamilyParams: beta");
    if (beta == 0.0)
      throw std::domain_error(
          "FamilyParams: beta = 0 degenerates phi (constant on N, phi(0)=0)");
    if (beta < 0.0 && p.value() != 2.0)
      throw std::domain_error("FamilyParams: beta < 0 requires p = 2");
  }

  Exponent p;
  double alpha;
  double beta;
};

namespace detail {

// Core of the power-family weight
//   n^alpha [ (1 - (1 - 1/n)^beta)^{p-1}
//             - (1 + 1/n)^alpha ((1 + 1/n)^beta - 1)^{p-1} ].
// (1 +/- 1/n)^beta - 1 is evaluated through expm1/log1p: the two bracket
// terms agree to O(1/n) and the naive route loses the O(n^{-p}) difference
// long before n reaches 1e4.
inline long double power_weight_core(double pv, double alpha, double beta,
                                     i64 n) {
  const long double x = 1.0L / static_cast<long double>(n);
  const long double a = -expm1l(beta * log1pl(-x));  // 1 - (1 - 1/n)^beta
  const long double b = expm1l(beta * log1pl(x));    // (1 + 1/n)^beta - 1
  const double pm1 = pv - 1.0;
  const long double apow = (pm1 == 1.0) ? a : powl(a, pm1);
  const long double bpow = (pm1 == 1.0) ? b : powl(b, pm1);
  return powl(static_cast<long double>(n), alpha) *
         (apow - powl(1.0L + x, alpha) * bpow);
}

}  // namespace detail

// ((p-1)/p)^p / n^p, the classical discrete Hardy weight.
inline double classical_weight(Exponent p, i64 n) {
  if (n < 1) throw std::invalid_argument("classical_weight: n >= 1 required");
  const long double pv = p.value();
  return static_cast<double>(powl((pv - 1.0L) / pv, pv) /
                             powl(static_cast<long double>(n), pv));
}

// The optimal improvement of the classical weight,
//   (1 - (1 - 1/n)^{(p-1)/p})^{p-1} - ((1 + 1/n)^{(p-1)/p} - 1)^{p-1},
// strictly larger than classical_weight at every n.
inline double fkp_weight(Exponent p, i64 n) {
  if (n < 1) throw std::invalid_argument("fkp_weight: n >= 1 required");
  const double pv = p.value();
  return static_cast<double>(
      detail::power_weight_core(pv, 0.0, (pv - 1.0) / pv, n));
}

// Power-family weight w_{p,alpha,beta}(n); equals the weight generated from
// (v, phi) = (n^alpha, n^beta) with the supersolution condition at equality.
inline double power_weight(const FamilyParams& fp, i64 n) {
  if (n < 1) throw std::invalid_argument("power_weight: n >= 1 required");
  return static_cast<double>(
      detail::power_weight_core(fp.p.value(), fp.alpha, fp.beta, n));
}

// Gamma-ratio supersolution profile for the Copson weights:
//   phi(n) = Gamma(n + 1 - (alpha+1)/p) / Gamma(n),  phi(0) = 0.
// Computed as exp(lgamma difference) up to n = 1000 and by the multiplicative
// recurrence phi(n+1) = phi(n) (n + 1 - (alpha+1)/p)/n beyond, which keeps
// consecutive ratios exact where cancellation would otherwise dominate.
inline long double copson_phi(Exponent p, double alpha, i64 n) {
  if (n < 0) throw std::invalid_argument("copson_phi: n >= 0 required");
  if (n == 0) return 0.0L;
  require_finite(alpha, "copson_phi: alpha");
  const long double gamma_shift =
      (static_cast<long double>(alpha) + 1.0L) / p.value();
  const auto arg_at = [&](i64 k) { return k + 1.0L - gamma_shift; };
  if (arg_at(n) <= 0.0L || arg_at(1) <= 0.0L)
    throw std::domain_error("copson_phi: gamma argument must be positive");
  constexpr i64 kDirectLimit = 1000;
  const i64 m = std::min(n, kDirectLimit);
  long double phi =
      expl(lgammal(arg_at(m)) - lgammal(static_cast<long double>(m)));
  for (i64 k = m; k < n; ++k) phi *= arg_at(k) / static_cast<long double>(k);
  return phi;
}

inline std::vector<long double> copson_phi_table(Exponent p, double alpha,
                                                 i64 nmax) {
  std::vector<long double> tab(static_cast<std::size_t>(nmax) + 1, 0.0L);
  const long double gamma_shift =
      (static_cast<long double>(alpha) + 1.0L) / p.value();
  for (i64 n = 1; n <= std::min<i64>(nmax, 1000); ++n)
    tab[static_cast<std::size_t>(n)] = copson_phi(p, alpha, n);
  for (i64 n = 1000; n < nmax; ++n)
    tab[static_cast<std::size_t>(n) + 1] =
        tab[static_cast<std::size_t>(n)] *
        ((n + 1.0L - gamma_shift) / static_cast<long double>(n));
  return tab;
}

// Copson supersolution pair: v(1) = 0, v(n) = (n-1)^alpha for n >= 2,
// phi = copson_phi, tabulated through nmax.
inline WeightPair copson_pair(Exponent p, double alpha, i64 nmax) {
  auto v = [alpha](i64 n) -> long double {
    if (n <= 1) return 0.0L;
    return powl(static_cast<long double>(n - 1), alpha);
  };
  return WeightPair{std::move(v), tabulated(copson_phi_table(p, alpha, nmax)),
                    p};
}

// Slack of the Copson inequality with remainder,
//   sum n^alpha |u(n)-u(n-1)|^p
//     >= ((p-alpha-1)/p)^p sum (n+1)^{alpha-p} |u(n)|^p
//        + sum_{n>=2} n^alpha R_p(u(n), copson_phi(n)),
// for alpha < 0 and u(0) = u(1) = 0. residual in the returned report is the
// slack, non-negative up to tolerance.
inline VerificationReport copson_verify(const FinSeq& u, Exponent p,
                                        double alpha) {
  if (!(alpha < 0.0))
    throw std::domain_error("copson_verify: alpha < 0 required");
  if (u(1) != cx{})
    throw std::invalid_argument("copson_verify: u(1) = 0 required");

  const i64 nmax = u.max_support();
  const i64 cut = nmax + 1;
  const double pv = p.value();
  const auto phitab = copson_phi_table(p, alpha, cut);
  const double constant = std::pow((pv - alpha - 1.0) / pv, pv);

  VerificationReport rep;
  rep.truncation = cut;
  std::vector<double> lhs_terms, w_terms, r_terms;
  for (i64 n = 1; n <= cut; ++n) {
    const auto k = static_cast<std::size_t>(n);
    const double na = std::pow(static_cast<double>(n), alpha);
    const double lhs_n = na * std::pow(std::abs(u(n) - u(n - 1)), pv);
    const double w_n =
        (n <= nmax)
            ? constant * std::pow(static_cast<double>(n + 1), alpha - pv) *
                  std::pow(std::abs(u(n)), pv)
            : 0.0;
    double r_n = 0.0;
    if (n >= 2)
      r_n = na * detail::remainder_at(u(n), u(n - 1),
                                      static_cast<double>(phitab[k - 1]),
                                      static_cast<double>(phitab[k]), p);
    lhs_terms.push_back(lhs_n);
    w_terms.push_back(w_n);
    r_terms.push_back(r_n);
    rep.per_index.push_back({n, lhs_n, w_n, r_n});
  }
  rep.lhs = pairwise_sum(lhs_terms);
  rep.weight_sum = pairwise_sum(w_terms);
  rep.remainder_sum = pairwise_sum(r_terms);
  rep.residual = rep.lhs - rep.weight_sum - rep.remainder_sum;
  return rep;
}

// Right-hand side of the p = 2 identity in its shifted form:
//   sum_{n>=1} v(n+1) | sqrt(phi(n)/phi(n+1)) u(n+1)
//                      - sqrt(phi(n+1)/phi(n)) u(n) |^2.
// phi need only be positive on N with phi(0) = 0.
inline double huang_ye_rhs(const FinSeq& u, const IndexFn& v,
                           const IndexFn& phi) {
  const i64 nmax = u.max_support();
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(nmax));
  double phi_n = static_cast<double>(phi(1));
  for (i64 n = 1; n <= nmax; ++n) {
    const double phi_next = static_cast<double>(phi(n + 1));
    if (!(phi_n > 0.0) || !(phi_next > 0.0))
      throw std::invalid_argument("huang_ye_rhs: phi > 0 required on N");
    const double ratio = phi_n / phi_next;
    const cx diff = std::sqrt(ratio) * u(n + 1) - u(n) / std::sqrt(ratio);
    terms.push_back(static_cast<double>(v(n + 1)) * std::norm(diff));
    phi_n = phi_next;
  }
  return pairwise_sum(terms);
}

}  // namespace hardy
