#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hardy {

using cx  = std::complex<double>;
using i64 = std::int64_t;

// Library-wide default tolerances; every operation that exposes a tolerance
// parameter defaults to these.
inline constexpr double kRelTol = 1e-10;
inline constexpr double kAbsTol = 1e-13;

inline bool is_finite(cx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(cx z, const char* what) {
  if (!is_finite(z))
    throw std::invalid_argument(std::string(what) + ": non-finite value");
}

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x))
    throw std::invalid_argument(std::string(what) + ": non-finite value");
}

// Summability exponent; p > 1 always holds for a constructed value.
class Exponent {
 public:
  explicit Exponent(double p) : p_(p) {
    if (!std::isfinite(p) || !(p > 1.0))
      throw std::domain_error("Exponent: p > 1 required");
  }

  double value() const noexcept { return p_; }

  void require_at_least(double lo, const char* what) const {
    if (p_ < lo)
      throw std::domain_error(std::string(what) + ": requires p >= " +
                              std::to_string(lo));
  }

  friend bool operator==(Exponent a, Exponent b) noexcept {
    return a.p_ == b.p_;
  }

 private:
  double p_;
};

enum class EstimateMethod {
  grid_refine,
  golden_section,
  derivative_bisection,
  closed_form,
};

inline const char* to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::grid_refine:          return "grid_refine";
    case EstimateMethod::golden_section:       return "golden_section";
    case EstimateMethod::derivative_bisection: return "derivative_bisection";
    case EstimateMethod::closed_form:          return "closed_form";
  }
  return "unknown";
}

// A numerically computed constant together with its bracketing interval.
// lower <= value <= upper; upper - lower is at most the requested tolerance.
struct ConstantEstimate {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  EstimateMethod method = EstimateMethod::grid_refine;
  i64 evaluations = 0;
};

// Thrown when an iterative estimator exhausts its evaluation budget before
// reaching the requested tolerance; carries the best bracket found.
class budget_error : public std::runtime_error {
 public:
  budget_error(const std::string& msg, ConstantEstimate best)
      : std::runtime_error(msg), best_(best) {}

  const ConstantEstimate& best() const noexcept { return best_; }

 private:
  ConstantEstimate best_;
};

// Quantities that are non-negative by theory are clamped to zero when the
// computed value is a rounding-level negative; larger negatives are left
// visible to the caller.
inline double clamp_nonneg(double raw, double scale, double abs_tol = kAbsTol) {
  if (raw < 0.0 && raw >= -abs_tol * std::max(1.0, scale)) return 0.0;
  return raw;
}

}  // namespace hardy
