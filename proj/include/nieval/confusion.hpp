#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace nieval {

/// A ratio that may be undefined (0/0). Undefined is a legitimate value, not
/// an error: precision of a classifier that never predicts positive, NI of a
/// single-class target.
using Ratio = std::optional<double>;

/// Class sizes of a binary problem: w1 positives, w2 negatives.
struct ClassSizes {
  double w1 = 0.0;
  double w2 = 0.0;

  double total() const { return w1 + w2; }
  /// Fraction of positives, w1 / (w1 + w2).
  double positive_fraction() const { return w1 / (w1 + w2); }

  friend bool operator==(const ClassSizes&, const ClassSizes&) = default;
};

/// Two-class confusion matrix.
///
/// Counts are stored as doubles. Matrices built from data are flagged
/// integral; analysis-mode matrices may hold fractional counts so that the
/// continuous relation maps can reconstruct points between lattice values.
class ConfusionMatrix {
 public:
  /// Integer counts, as tallied from data.
  static ConfusionMatrix from_counts(std::uint64_t tp, std::uint64_t fp,
                                     std::uint64_t tn, std::uint64_t fn);
  /// Real-valued counts. Values that happen to be integers still set the
  /// integral flag.
  static ConfusionMatrix analysis(double tp, double fp, double tn, double fn);

  double tp() const { return tp_; }
  double fp() const { return fp_; }
  double tn() const { return tn_; }
  double fn() const { return fn_; }
  bool integral() const { return integral_; }

  double total() const { return tp_ + fp_ + tn_ + fn_; }
  double w1() const { return tp_ + fn_; }
  double w2() const { return fp_ + tn_; }
  ClassSizes class_sizes() const { return {w1(), w2()}; }

  friend bool operator==(const ConfusionMatrix& a, const ConfusionMatrix& b) {
    return a.tp_ == b.tp_ && a.fp_ == b.fp_ && a.tn_ == b.tn_ && a.fn_ == b.fn_;
  }

 private:
  ConfusionMatrix(double tp, double fp, double tn, double fn, bool integral);

  double tp_;
  double fp_;
  double tn_;
  double fn_;
  bool integral_;
};

/// One observation: the true label and the classifier's label.
struct LabelPair {
  std::string target;
  std::string predicted;
};

/// Two-symbol label alphabet. When `negative` is empty the first label that
/// differs from `positive` becomes the negative symbol.
struct BinaryAlphabet {
  std::string positive = "1";
  std::optional<std::string> negative;
};

ConfusionMatrix from_label_pairs(std::span<const LabelPair> pairs,
                                 const BinaryAlphabet& alphabet);

double accuracy(const ConfusionMatrix& cm);
Ratio precision(const ConfusionMatrix& cm);
Ratio recall(const ConfusionMatrix& cm);
Ratio false_alarm(const ConfusionMatrix& cm);

/// The complement model: every predicted label inverted.
/// (tp, fp, tn, fn) -> (fn, tn, fp, tp). An involution.
ConfusionMatrix flip_predictions(const ConfusionMatrix& cm);

struct MetricsReport {
  double accuracy = 0.0;
  Ratio precision;
  Ratio recall;
  Ratio false_alarm;
  Ratio ni;
};

/// All indexes for one matrix; NI through the general entropy route.
MetricsReport metrics_report(const ConfusionMatrix& cm);

}  // namespace nieval
