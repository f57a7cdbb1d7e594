#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "nieval/confusion.hpp"

namespace nieval {

/// Which cells of a binary confusion matrix are zero.
///
///   Case1  tp = fp = 0          (never predicts positive)      NI = 0
///   Case2  tn = fn = 0          (never predicts negative)      NI = 0
///   Case3  tp = tn = 0          (always wrong)                 NI = 1
///   Case4  fp = fn = 0          (always right)                 NI = 1
///   Case5  tp = 0,  tn, fp != 0
///   Case6  tn = 0,  tp, fn != 0
///   Case7  fp = 0,  tp, fn != 0
///   Case8  fn = 0,  fp, tn != 0
///   Case9  all four cells nonzero
///
/// The conditions overlap only on matrices with a single target class.
/// classify_case() resolves overlaps in the order 3, 4, 1, 2, 5, 6, 7, 8, 9.
enum class CaseId { Case1 = 1, Case2, Case3, Case4, Case5, Case6, Case7, Case8, Case9 };

std::string_view to_string(CaseId id);

CaseId classify_case(const ConfusionMatrix& cm);

/// Performance index used to parameterize a closed form.
enum class Index { Accuracy, Precision, Recall, FalseAlarm };

std::string_view to_string(Index index);

/// The indexes of one classifier together with its class sizes.
struct IndexPoint {
  Ratio a;
  Ratio p;
  Ratio r;
  Ratio f;
  ClassSizes sizes;

  static IndexPoint from(const ConfusionMatrix& cm);
};

/// NI expanded over the four counts; Undefined when H(T) = 0.
Ratio ni_from_counts(const ConfusionMatrix& cm);

// Checked evaluators. Each validates that its arguments are reachable by some
// matrix of the named case (closure included where the expression stays
// finite) and throws DomainError otherwise. Every one of them equals
// ni_from_counts() on the matrix it implicitly reconstructs.

/// tp = 0: NI in terms of accuracy. Reachable for 0 < a <= w2 / w.
double ni_case5(double a, ClassSizes sizes);
/// tn = 0: via accuracy, precision or recall.
double ni_case6(const IndexPoint& point, Index via);
/// fp = 0: via accuracy or recall.
double ni_case7(const IndexPoint& point, Index via);
/// fn = 0: via accuracy or precision.
double ni_case8(const IndexPoint& point, Index via);
/// Normal case from (accuracy, precision, recall) alone; the class balance is
/// recovered by inverting accuracy_from_pr().
double ni_case9_apr(double a, double p, double r);

/// Positive-class fraction w1 / w implied by an (a, p, r) triple.
double positive_fraction_from_apr(double a, double p, double r);

/// A = (2PR w1 + P w2 - R w1) / (P (w1 + w2)).
double accuracy_from_pr(double p, double r, ClassSizes sizes);
/// NI over (precision, recall). Throws DomainError outside the feasible region.
double ni_from_pr(double p, double r, ClassSizes sizes);
/// P = R w1 / (R w1 + F w2).
double precision_from_fr(double f, double r, ClassSizes sizes);
/// NI over (false alarm, recall); defined on the whole unit square.
double ni_from_fr(double f, double r, ClassSizes sizes);

/// Unchecked expressions, exactly as the closed forms are written. Callers
/// must keep every logarithm argument nonnegative; relation maps use these to
/// evaluate curve continuations and junctions.
namespace forms {
double case5_acc(double a, ClassSizes s);
double case6_acc(double a, ClassSizes s);
double case6_pre(double p, ClassSizes s);
double case6_rec(double r, ClassSizes s);
double case7_acc(double a, ClassSizes s);
double case7_rec(double r, ClassSizes s);
double case8_acc(double a, ClassSizes s);
double case8_pre(double p, ClassSizes s);
double case9_apr(double a, double p, double r);
double pr_form(double p, double r, ClassSizes s);
/// pr_form with x*log2|x| in place of x*log2(x): the real part of the
/// expression where the (p, r) pair is infeasible.
double pr_form_real_part(double p, double r, ClassSizes s);
double fr_form(double f, double r, ClassSizes s);
/// fr_form without the leading log2(w1 + w2) term, as originally typeset.
/// Kept for the errata record; it is low by log2(w1 + w2) / H(T) everywhere.
double fr_form_verbatim(double f, double r, ClassSizes s);
}  // namespace forms

/// One closed form evaluated for a dispatched matrix.
struct FormValue {
  std::string_view form;
  double value = 0.0;
};

struct DispatchResult {
  CaseId case_id = CaseId::Case9;
  /// H(T) - H(T|Y) over H(T) through the general entropy route.
  double direct = 0.0;
  std::array<FormValue, 3> forms{};
  std::size_t form_count = 0;
  /// Some form disagreed with `direct` beyond tolerance.
  bool quarantined = false;

  std::span<const FormValue> evaluated() const { return {forms.data(), form_count}; }
  /// The first form of the case, or `direct` when quarantined.
  double value() const { return quarantined ? direct : forms[0].value; }
  double max_deviation() const;
};

/// Classifies `cm`, evaluates every closed form of its case and compares each
/// with the direct computation. Throws DomainError when H(T) = 0.
DispatchResult dispatch_ni(const ConfusionMatrix& cm, double tolerance = 1e-9);

/// Known transcription defects of the typeset formulas, each confirmed
/// against the direct computation.
struct Erratum {
  std::string_view id;
  std::string_view description;
};

std::span<const Erratum> known_errata();

}  // namespace nieval
