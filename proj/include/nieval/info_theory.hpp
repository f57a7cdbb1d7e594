#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nieval/confusion.hpp"

namespace nieval {

/// K x K count matrix; entry (i, j) counts samples of target class i that were
/// predicted as class j. Row sums are the class sizes.
class CountMatrix {
 public:
  CountMatrix(std::size_t k, std::vector<double> row_major);

  /// Binary layout: row 0 = positive target, column 0 = predicted positive.
  /// [[tp, fn], [fp, tn]].
  static CountMatrix from_confusion(const ConfusionMatrix& cm);

  std::size_t k() const { return k_; }
  double at(std::size_t i, std::size_t j) const { return counts_[i * k_ + j]; }
  std::span<const double> counts() const { return counts_; }
  double total() const { return total_; }
  std::vector<double> row_sums() const;
  std::vector<double> column_sums() const;

 private:
  std::size_t k_;
  std::vector<double> counts_;
  double total_;
};

/// Plug-in Shannon entropy in bits of the distribution given by class sizes.
double empirical_entropy(std::span<const double> class_sizes);

/// Entropy of the target (row) marginal of `m`.
double target_entropy(const CountMatrix& m);

/// H(T|Y): average target entropy within each predicted column, in bits.
/// Empty predicted columns contribute nothing.
double conditional_entropy(const CountMatrix& m);

/// (H(T) - H(T|Y)) / H(T). Undefined when H(T) = 0.
Ratio normalized_mutual_information(const CountMatrix& m);

/// Same value, bit for bit, as the CountMatrix::from_confusion route, without
/// heap allocation.
Ratio normalized_mutual_information(const ConfusionMatrix& cm);

/// H(T) of a two-class target with sizes w1, w2.
double binary_target_entropy(double w1, double w2);

}  // namespace nieval
