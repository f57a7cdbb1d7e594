#pragma once

#include <cmath>
#include <cstdlib>

#include "nieval/errors.hpp"

namespace nieval {

/// x * log2(x) with the convention 0 * log2(0) = 0.
///
/// Every entropy and closed-form evaluator in the library goes through this
/// kernel. The zero branch is explicit; a negative argument is a caller bug.
inline double xlog2x(double x) {
  if (x == 0.0) return 0.0;
  if (x < 0.0) throw DomainError("xlog2x: negative argument");
  return x * std::log2(x);
}

/// Real part of x * log2(x) on the principal branch: x * log2|x|.
/// Only used to evaluate formulas formally outside their feasible domain.
inline double xlog2x_real_part(double x) {
  if (x == 0.0) return 0.0;
  return x * std::log2(std::abs(x));
}

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace nieval
