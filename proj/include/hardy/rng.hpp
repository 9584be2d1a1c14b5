#pragma once

#include <cmath>
#include <cstdint>

#include "hardy/seq.hpp"
#include "hardy/types.hpp"

namespace hardy {

// Fuzzing RNG, platform-stable and documented so runs are reproducible from
// (seed, trial) alone. Algorithm identifier: "splitmix64+box-muller/v1".
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi].
  i64 uniform_int(i64 lo, i64 hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<i64>(next() % span);
  }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Random sequence model: the top support index is uniform in [1, support_max]
// and every entry below it gets independent standard normal real and
// imaginary parts.
struct SeqFuzzer {
  SplitMix64 rng;

  explicit SeqFuzzer(std::uint64_t seed) : rng(seed) {}

  FinSeq complex_seq(i64 support_max) {
    const i64 top = rng.uniform_int(1, support_max);
    FinSeq u;
    for (i64 n = 1; n <= top; ++n) u.set(n, cx{rng.normal(), rng.normal()});
    return u;
  }

  FinSeq real_seq(i64 support_max) {
    const i64 top = rng.uniform_int(1, support_max);
    FinSeq u;
    for (i64 n = 1; n <= top; ++n) u.set(n, cx{rng.normal(), 0.0});
    return u;
  }
};

inline constexpr const char* kFuzzerAlgorithm = "splitmix64+box-muller/v1";

}  // namespace hardy
