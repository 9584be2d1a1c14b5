#pragma once

#include <utility>
#include <vector>

#include "hardy/types.hpp"

namespace hardy {

// Finitely supported complex sequence on the non-negative integers with
// u(0) = 0. Index 0 is not storable; reads outside the stored range give 0.
class FinSeq {
 public:
  FinSeq() = default;

  void set(i64 n, cx value) {
    if (n < 1)
      throw std::invalid_argument("FinSeq::set: index must be >= 1");
    require_finite(value, "FinSeq::set");
    if (static_cast<std::size_t>(n) >= values_.size())
      values_.resize(static_cast<std::size_t>(n) + 1, cx{0.0, 0.0});
    values_[static_cast<std::size_t>(n)] = value;
  }

  cx operator()(i64 n) const noexcept {
    if (n < 1 || static_cast<std::size_t>(n) >= values_.size()) return {};
    return values_[static_cast<std::size_t>(n)];
  }

  // Largest index with a nonzero value; 0 for the zero sequence.
  i64 max_support() const noexcept {
    for (std::size_t k = values_.size(); k-- > 1;)
      if (values_[k] != cx{}) return static_cast<i64>(k);
    return 0;
  }

  bool is_zero() const noexcept { return max_support() == 0; }

  bool is_real() const noexcept {
    for (const cx& z : values_)
      if (z.imag() != 0.0) return false;
    return true;
  }

  std::vector<std::pair<i64, cx>> nonzero_entries() const {
    std::vector<std::pair<i64, cx>> out;
    for (std::size_t k = 1; k < values_.size(); ++k)
      if (values_[k] != cx{}) out.emplace_back(static_cast<i64>(k), values_[k]);
    return out;
  }

  static FinSeq from_pairs(const std::vector<std::pair<i64, cx>>& entries) {
    FinSeq u;
    for (const auto& [n, z] : entries) {
      if (n == 0)
        throw std::invalid_argument("FinSeq: index 0 is fixed to u(0) = 0");
      if (u(n) != cx{})
        throw std::invalid_argument("FinSeq: duplicate index " +
                                    std::to_string(n));
      u.set(n, z);
    }
    return u;
  }

 private:
  std::vector<cx> values_;  // values_[0] is never written
};

inline FinSeq scale(const FinSeq& u, cx factor) {
  FinSeq out;
  for (const auto& [n, z] : u.nonzero_entries()) out.set(n, factor * z);
  return out;
}

}  // namespace hardy
