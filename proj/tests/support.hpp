#pragma once

#include <cstdint>
#include <random>

#include "nieval/confusion.hpp"

namespace nieval::testing {

// Deterministic generator of integer confusion matrices.
class MatrixGen {
 public:
  explicit MatrixGen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t count(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

  // All four cells in [1, hi].
  ConfusionMatrix full(std::uint64_t hi = 200) {
    return ConfusionMatrix::from_counts(count(1, hi), count(1, hi), count(1, hi), count(1, hi));
  }

  // Any matrix with both classes present.
  ConfusionMatrix valid(std::uint64_t hi = 200) {
    for (;;) {
      const auto cm = ConfusionMatrix::from_counts(count(0, hi), count(0, hi), count(0, hi),
                                                   count(0, hi));
      if (cm.w1() > 0 && cm.w2() > 0) return cm;
    }
  }

  // Cells listed in `zero` (tp, fp, tn, fn order) are 0, the rest in [1, hi].
  ConfusionMatrix with_zeros(bool ztp, bool zfp, bool ztn, bool zfn, std::uint64_t hi = 200) {
    auto cell = [&](bool z) { return z ? 0 : count(1, hi); };
    const auto tp = cell(ztp);
    const auto fp = cell(zfp);
    const auto tn = cell(ztn);
    const auto fn = cell(zfn);
    return ConfusionMatrix::from_counts(tp, fp, tn, fn);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace nieval::testing
