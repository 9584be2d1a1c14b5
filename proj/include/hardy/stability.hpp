#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "hardy/cp.hpp"
#include "hardy/minimize.hpp"
#include "hardy/seq.hpp"
#include "hardy/series.hpp"
#include "hardy/sum.hpp"
#include "hardy/types.hpp"

namespace hardy {

// Result of the quantitative stability evaluation: the Hardy deficit is
// bounded below by prefactor times the distance of u to the family of
// formal minimizers c n^{(p-1)/p}, measured in the logarithmic norm.
struct StabilityReport {
  double deficit = 0.0;
  double c_star = 0.0;
  double infimum_value = 0.0;  // inf over c of the shifted logarithmic sum
  double prefactor = 0.0;      // c1(p)/2^{p-1} * ((p-1)/p)^p
  double bound = 0.0;          // prefactor * infimum_value
  double margin = 0.0;         // deficit - bound
  i64 truncation = 0;          // support cut; the |c|^p tail takes over after
};

struct CriticalHardyResult {
  double lhs = 0.0;
  double rhs = 0.0;  // ((p-1)/p)^p * inf over c of the logarithmic sum
  double slack = 0.0;
  double c_used = 0.0;
  double rhs_at_v1 = 0.0;  // same bound with c pinned to v(1)
};

struct MuckenhouptEstimate {
  double sup_lower = 0.0;
  double sup_upper = 0.0;
  i64 r_at_sup = 0;
  double bound = 0.0;  // 1/(p-1)
};

// Deficit of the classical discrete p-Hardy inequality:
//   sum |u(n)-u(n-1)|^p - ((p-1)/p)^p sum |u(n)|^p / n^p  >=  0.
inline double hardy_deficit(const FinSeq& u, Exponent p) {
  const double pv = p.value();
  const i64 cut = u.max_support() + 1;
  std::vector<double> diff_terms, weight_terms;
  diff_terms.reserve(static_cast<std::size_t>(cut));
  weight_terms.reserve(static_cast<std::size_t>(cut));
  for (i64 n = 1; n <= cut; ++n) {
    diff_terms.push_back(std::pow(std::abs(u(n) - u(n - 1)), pv));
    weight_terms.push_back(std::pow(std::abs(u(n)), pv) /
                           std::pow(static_cast<double>(n), pv));
  }
  const double c = std::pow((pv - 1.0) / pv, pv);
  return pairwise_sum(diff_terms) - c * pairwise_sum(weight_terms);
}

namespace detail {

// Finite model of f(c) = sum_k w_k |a_k - c r_k|^p + |c|^p T, where T
// brackets the series coefficient collected from the infinitely many
// indices past the support (there a_k = 0 and the summand is |c r_k|^p w_k).
// f is strictly convex and coercive, so a minimizer exists.
struct ShiftProblem {
  std::vector<cx> a;
  std::vector<double> r;
  std::vector<double> w;
  double p = 2.0;
  Interval tail;

  double f(double c, double tail_end) const {
    std::vector<double> terms(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      terms[k] = w[k] * std::pow(std::abs(a[k] - c * r[k]), p);
    return pairwise_sum(terms) + std::pow(std::abs(c), p) * tail_end;
  }

  // d/dc |a - c r|^p = -p r |d|^{p-2} Re(d) with d = a - c r; the factor
  // |d|^{p-2} Re(d) is bounded by |d|^{p-1}, so the term extends by 0 at
  // d = 0 for every p > 1.
  double df(double c, double tail_end) const {
    std::vector<double> terms(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      const cx d = a[k] - c * r[k];
      const double ad = std::abs(d);
      terms[k] = (ad == 0.0)
                     ? 0.0
                     : -p * w[k] * r[k] * std::pow(ad, p - 2.0) * d.real();
    }
    double g = pairwise_sum(terms);
    if (c != 0.0)
      g += p * std::copysign(std::pow(std::abs(c), p - 1.0), c) * tail_end;
    return g;
  }

  // Quadratic (p = 2 style) least-squares shift; used to seed the bracket.
  double least_squares_init(double tail_end) const {
    double num = 0.0, den = tail_end;
    for (std::size_t k = 0; k < a.size(); ++k) {
      num += w[k] * r[k] * a[k].real();
      den += w[k] * r[k] * r[k];
    }
    return den > 0.0 ? num / den : 0.0;
  }
};

// Terms of inf_c sum_{n>=2} |u(n) - c n^{(p-1)/p}|^p / (n^p log^p n); the
// tail coefficient is sum_{n>cut} 1/(n log^p n) since r_n^p w_n = 1/(n log^p n).
inline ShiftProblem shift_problem(const FinSeq& u, Exponent p) {
  const double pv = p.value();
  const double q = (pv - 1.0) / pv;
  const i64 nmax = u.max_support();
  ShiftProblem prob;
  prob.p = pv;
  for (i64 n = 2; n <= nmax; ++n) {
    prob.a.push_back(u(n));
    prob.r.push_back(std::pow(static_cast<double>(n), q));
    prob.w.push_back(std::pow(static_cast<double>(n) * std::log(n), -pv));
  }
  prob.tail = LogWeightTail::cached(pv).tail_from(std::max<i64>(nmax + 1, 2));
  return prob;
}

// Terms of inf_c sum_{n>=2} |v(n) - c|^p / (n log^p n); same tail series.
inline ShiftProblem const_shift_problem(const FinSeq& v, Exponent p) {
  const double pv = p.value();
  const i64 nmax = v.max_support();
  ShiftProblem prob;
  prob.p = pv;
  for (i64 n = 2; n <= nmax; ++n) {
    prob.a.push_back(v(n));
    prob.r.push_back(1.0);
    prob.w.push_back(std::pow(std::log(n), -pv) / static_cast<double>(n));
  }
  prob.tail = LogWeightTail::cached(pv).tail_from(std::max<i64>(nmax + 1, 2));
  return prob;
}

inline Minimize1dResult solve_shift(const ShiftProblem& prob, double tail_end,
                                    double tol_c, i64 max_evals) {
  const auto f = [&](double c) { return prob.f(c, tail_end); };
  const auto df = [&](double c) { return prob.df(c, tail_end); };
  return minimize_convex(f, df, prob.least_squares_init(tail_end), tol_c,
                         max_evals);
}

}  // namespace detail

// Minimizes f(c) = sum_{n>=2} |u(n) - c n^{(p-1)/p}|^p / (n^p log^p n) over
// real c. The bracket on the minimizer has width at most tol.
inline ConstantEstimate optimal_shift(const FinSeq& u, Exponent p, double tol,
                                      i64 max_evals = 1'000'000) {
  if (!(tol > 0.0)) throw std::domain_error("optimal_shift: tol > 0 required");
  const auto prob = detail::shift_problem(u, p);
  const auto res = detail::solve_shift(prob, prob.tail.mid(), tol, max_evals);
  ConstantEstimate est;
  est.value = res.point;
  est.lower = res.lo;
  est.upper = res.hi;
  est.method = res.method;
  est.evaluations = res.evaluations;
  return est;
}

// Conservative lower end for the sharp constant c1(p); exact at p = 2.
// Estimates are cached per exponent behind an initialize-once guard.
inline double c1_lower_cached(Exponent p) {
  p.require_at_least(2.0, "c1_lower_cached");
  if (p.value() == 2.0) return 1.0;
  static std::mutex mu;
  static std::map<double, double> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(p.value());
  if (it == cache.end())
    it = cache.emplace(p.value(), cp_lower_constant(p, 1e-7).lower).first;
  return it->second;
}

// Quantitative stability of the classical inequality for p >= 2:
//   deficit(u) >= c1(p)/2^{p-1} ((p-1)/p)^p inf_c sum_{n>=2}
//                 |u(n) - c n^{(p-1)/p}|^p / (n^p log^p n).
// The bound consumes the conservative ends of both the c1 bracket and the
// tail bracket, so optimizer error can only shrink it.
inline StabilityReport stability_report(const FinSeq& u, Exponent p) {
  p.require_at_least(2.0, "stability_report");
  const double pv = p.value();

  StabilityReport rep;
  rep.deficit = hardy_deficit(u, p);
  rep.truncation = std::max<i64>(u.max_support(), 1);

  const auto prob = detail::shift_problem(u, p);
  const auto res = detail::solve_shift(prob, prob.tail.lo, 1e-8, 1'000'000);
  rep.c_star = res.point;
  rep.infimum_value = prob.f(res.point, prob.tail.lo);
  rep.prefactor = c1_lower_cached(p) / std::pow(2.0, pv - 1.0) *
                  std::pow((pv - 1.0) / pv, pv);
  rep.bound = rep.prefactor * rep.infimum_value;
  rep.margin = rep.deficit - rep.bound;
  return rep;
}

// Critical (logarithmic-weight) Hardy inequality for real, finitely
// supported v:
//   sum_{n>=2} |v(n)-v(n-1)|^p n^{p-1}
//     >= ((p-1)/p)^p inf_c sum_{n>=2} |v(n)-c|^p / (n log^p n).
// c = v(1) is always admitted as a candidate shift, so rhs <= rhs_at_v1.
inline CriticalHardyResult critical_hardy_check(const FinSeq& vseq,
                                                Exponent p) {
  if (!vseq.is_real())
    throw std::invalid_argument("critical_hardy_check: real sequence required");
  const double pv = p.value();
  const i64 cut = vseq.max_support() + 1;

  std::vector<double> lhs_terms;
  for (i64 n = 2; n <= cut; ++n)
    lhs_terms.push_back(std::pow(std::abs(vseq(n) - vseq(n - 1)), pv) *
                        std::pow(static_cast<double>(n), pv - 1.0));

  const auto prob = detail::const_shift_problem(vseq, p);
  const auto res = detail::solve_shift(prob, prob.tail.lo, 1e-8, 1'000'000);
  const double v1 = vseq(1).real();
  double c_used = res.point;
  double f_best = prob.f(c_used, prob.tail.lo);
  const double f_at_v1 = prob.f(v1, prob.tail.lo);
  if (f_at_v1 < f_best) {
    c_used = v1;
    f_best = f_at_v1;
  }

  const double constant = std::pow((pv - 1.0) / pv, pv);
  CriticalHardyResult out;
  out.lhs = pairwise_sum(lhs_terms);
  out.rhs = constant * f_best;
  out.rhs_at_v1 = constant * f_at_v1;
  out.slack = out.lhs - out.rhs;
  out.c_used = c_used;
  return out;
}

// Muckenhoupt-type constant for the weights mu(k) = 1/((k+1) log^p(k+1)),
// nu(k) = (k+1)^{p-1}:
//   sup_{1 <= r <= r_max} [ sum_{k>r} mu(k) ] [ sum_{k=1}^r 1/(k+1) ]^{p-1},
// reported as an interval from the tail brackets. The strict tail (k > r)
// keeps the quantity below its limit 1/(p-1); including the k = r term
// breaks that bound already at r = 1 (at p = 2 the value is about 1.05).
// tail_order is the number of explicit tail terms before the integral
// comparison takes over.
inline MuckenhouptEstimate muckenhoupt_constant(Exponent p, i64 r_max,
                                                i64 tail_order = 100'000) {
  if (r_max < 1)
    throw std::invalid_argument("muckenhoupt_constant: r_max >= 1 required");
  const double pv = p.value();
  const LogWeightTail tails(pv, r_max + std::max<i64>(tail_order, 1) + 2);

  MuckenhouptEstimate est;
  est.bound = 1.0 / (pv - 1.0);
  double harmonic = 0.0;
  for (i64 r = 1; r <= r_max; ++r) {
    harmonic += 1.0 / static_cast<double>(r + 1);
    // sum_{k >= r+1} mu(k) = sum_{m >= r+2} 1/(m log^p m)
    const Interval tail = tails.tail_from(r + 2);
    const double hp = std::pow(harmonic, pv - 1.0);
    const double lo = tail.lo * hp;
    const double hi = tail.hi * hp;
    if (hi > est.sup_upper) {
      est.sup_upper = hi;
      est.r_at_sup = r;
    }
    if (lo > est.sup_lower) est.sup_lower = lo;
  }
  return est;
}

}  // namespace hardy
