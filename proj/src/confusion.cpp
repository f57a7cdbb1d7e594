#include "nieval/confusion.hpp"

#include <cmath>

#include "nieval/errors.hpp"
#include "nieval/info_theory.hpp"

namespace nieval {

namespace {

bool is_whole(double x) { return std::isfinite(x) && std::floor(x) == x; }

Ratio ratio_or_undefined(double num, double den) {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(double tp, double fp, double tn, double fn,
                                 bool integral)
    : tp_(tp), fp_(fp), tn_(tn), fn_(fn), integral_(integral) {
  for (double c : {tp, fp, tn, fn}) {
    if (!std::isfinite(c) || c < 0.0) {
      throw InputError("confusion matrix counts must be finite and nonnegative");
    }
  }
  if (total() <= 0.0) {
    throw InputError("confusion matrix total must be positive");
  }
}

ConfusionMatrix ConfusionMatrix::from_counts(std::uint64_t tp, std::uint64_t fp,
                                             std::uint64_t tn, std::uint64_t fn) {
  return ConfusionMatrix(static_cast<double>(tp), static_cast<double>(fp),
                         static_cast<double>(tn), static_cast<double>(fn), true);
}

ConfusionMatrix ConfusionMatrix::analysis(double tp, double fp, double tn,
                                          double fn) {
  const bool integral = is_whole(tp) && is_whole(fp) && is_whole(tn) && is_whole(fn);
  return ConfusionMatrix(tp, fp, tn, fn, integral);
}

ConfusionMatrix from_label_pairs(std::span<const LabelPair> pairs,
                                 const BinaryAlphabet& alphabet) {
  if (pairs.empty()) throw InputError("no label pairs");
  if (alphabet.negative && *alphabet.negative == alphabet.positive) {
    throw InputError("positive and negative labels must differ");
  }
  std::optional<std::string> negative = alphabet.negative;
  auto is_positive = [&](const std::string& label) {
    if (label == alphabet.positive) return true;
    if (!negative) negative = label;
    if (label != *negative) {
      throw InputError("label '" + label + "' is outside the alphabet {" +
                       alphabet.positive + ", " + *negative + "}");
    }
    return false;
  };

  std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (const auto& pair : pairs) {
    const bool target = is_positive(pair.target);
    const bool predicted = is_positive(pair.predicted);
    if (target) {
      predicted ? ++tp : ++fn;
    } else {
      predicted ? ++fp : ++tn;
    }
  }
  return ConfusionMatrix::from_counts(tp, fp, tn, fn);
}

double accuracy(const ConfusionMatrix& cm) {
  return (cm.tp() + cm.tn()) / cm.total();
}

Ratio precision(const ConfusionMatrix& cm) {
  return ratio_or_undefined(cm.tp(), cm.tp() + cm.fp());
}

Ratio recall(const ConfusionMatrix& cm) {
  return ratio_or_undefined(cm.tp(), cm.w1());
}

Ratio false_alarm(const ConfusionMatrix& cm) {
  return ratio_or_undefined(cm.fp(), cm.w2());
}

ConfusionMatrix flip_predictions(const ConfusionMatrix& cm) {
  return ConfusionMatrix::analysis(cm.fn(), cm.tn(), cm.fp(), cm.tp());
}

MetricsReport metrics_report(const ConfusionMatrix& cm) {
  return MetricsReport{
      .accuracy = accuracy(cm),
      .precision = precision(cm),
      .recall = recall(cm),
      .false_alarm = false_alarm(cm),
      .ni = normalized_mutual_information(cm),
  };
}

}  // namespace nieval
