#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "hardy/types.hpp"

namespace hardy {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

// Brackets for tails of the logarithmic series
//   sum_{n=m}^infty 1/(n log^p n),  m >= 2, natural log.
// Explicit terms are accumulated up to kmax; past that the tail is bracketed
// by integral comparison: the summand is decreasing, so
//   int_M^inf dx/(x log^p x) <= sum_{n=M}^inf <= int_{M-1}^inf,
// with int_M^inf dx/(x log^p x) = log^{1-p}(M) / (p-1).
class LogWeightTail {
 public:
  explicit LogWeightTail(double p, i64 kmax = 200'000) : p_(p), kmax_(kmax) {
    if (!(p > 1.0)) throw std::domain_error("LogWeightTail: p > 1 required");
    if (kmax_ < 4) kmax_ = 4;
    prefix_.resize(static_cast<std::size_t>(kmax_) + 1, 0.0);
    double s = 0.0;
    for (i64 n = 2; n <= kmax_; ++n) {
      s += term(n);
      prefix_[static_cast<std::size_t>(n)] = s;
    }
  }

  double term(i64 n) const {
    return 1.0 / (static_cast<double>(n) * std::pow(std::log(n), p_));
  }

  // sum_{n = m}^infty of the summand, m >= 2.
  Interval tail_from(i64 m) const {
    if (m < 2) throw std::domain_error("LogWeightTail: m >= 2 required");
    if (m > kmax_) return {integral_from(m), integral_from(m - 1)};
    const double head = prefix_[static_cast<std::size_t>(kmax_)] -
                        prefix_[static_cast<std::size_t>(m - 1)];
    return {head + integral_from(kmax_ + 1), head + integral_from(kmax_)};
  }

  // Per-exponent shared instances; built once, read-only afterwards.
  static const LogWeightTail& cached(double p) {
    static std::mutex mu;
    static std::map<double, std::unique_ptr<LogWeightTail>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(p);
    if (it == cache.end())
      it = cache.emplace(p, std::make_unique<LogWeightTail>(p)).first;
    return *it->second;
  }

 private:
  double integral_from(i64 m) const {
    return std::pow(std::log(m), 1.0 - p_) / (p_ - 1.0);
  }

  double p_;
  i64 kmax_;
  std::vector<double> prefix_;
};

}  // namespace hardy
