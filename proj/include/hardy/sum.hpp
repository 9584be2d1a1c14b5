#pragma once

#include <span>
#include <vector>

namespace hardy {

// Pairwise (cascade) summation. All series reductions in the library go
// through this so that results are reproducible and the documented residual
// tolerances hold independently of term count.
inline double pairwise_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n <= 16) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& xs) {
  return pairwise_sum(std::span<const double>(xs));
}

}  // namespace hardy
