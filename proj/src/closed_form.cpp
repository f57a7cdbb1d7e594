#include "nieval/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nieval/errors.hpp"
#include "nieval/info_theory.hpp"
#include "nieval/xlog.hpp"

namespace nieval {

namespace {

constexpr double kRangeSlack = 1e-12;
constexpr double kClampSlack = 1e-12;

double xl(double x) { return xlog2x(x); }

// Dispatch evaluates several forms for the same class sizes in a row.
double cached_target_entropy(ClassSizes s) {
  thread_local ClassSizes last{-1.0, -1.0};
  thread_local double h = 0.0;
  if (!(s == last)) {
    h = binary_target_entropy(s.w1, s.w2);
    last = s;
  }
  return h;
}

double target_entropy_or_throw(ClassSizes s) {
  const double h = cached_target_entropy(s);
  if (h == 0.0) throw DomainError("target entropy is zero");
  return h;
}

void require_sizes(ClassSizes s) {
  if (!(s.w1 > 0.0) || !(s.w2 > 0.0) || !std::isfinite(s.w1) || !std::isfinite(s.w2)) {
    throw DomainError("class sizes must both be positive");
  }
}

void require_in(double x, double lo, double hi, bool lo_open, bool hi_open,
                const char* what) {
  const double slack = kRangeSlack * std::max(1.0, std::abs(hi - lo));
  const bool lo_ok = lo_open ? x > lo : x >= lo - slack;
  const bool hi_ok = hi_open ? x < hi : x <= hi + slack;
  if (!std::isfinite(x) || !lo_ok || !hi_ok) {
    throw DomainError(std::string(what) + " = " + std::to_string(x) +
                      " is outside the reachable range");
  }
}

double clamp_unit(double ni) {
  if (ni < 0.0 && ni >= -kClampSlack) return 0.0;
  if (ni > 1.0 && ni <= 1.0 + kClampSlack) return 1.0;
  return ni;
}

double require_value(const Ratio& r, Index via) {
  if (!r) {
    throw DomainError(std::string(to_string(via)) + " is undefined for this point");
  }
  return *r;
}

double ratio_of(const IndexPoint& point, Index via) {
  switch (via) {
    case Index::Accuracy: return require_value(point.a, via);
    case Index::Precision: return require_value(point.p, via);
    case Index::Recall: return require_value(point.r, via);
    case Index::FalseAlarm: return require_value(point.f, via);
  }
  return 0.0;
}

[[noreturn]] void unsupported(const char* which, Index via) {
  throw InputError(std::string(which) + " has no form in " + std::string(to_string(via)));
}

}  // namespace

std::string_view to_string(CaseId id) {
  switch (id) {
    case CaseId::Case1: return "Case1";
    case CaseId::Case2: return "Case2";
    case CaseId::Case3: return "Case3";
    case CaseId::Case4: return "Case4";
    case CaseId::Case5: return "Case5";
    case CaseId::Case6: return "Case6";
    case CaseId::Case7: return "Case7";
    case CaseId::Case8: return "Case8";
    case CaseId::Case9: return "Case9";
  }
  return "?";
}

std::string_view to_string(Index index) {
  switch (index) {
    case Index::Accuracy: return "accuracy";
    case Index::Precision: return "precision";
    case Index::Recall: return "recall";
    case Index::FalseAlarm: return "false_alarm";
  }
  return "?";
}

CaseId classify_case(const ConfusionMatrix& cm) {
  const bool tp = cm.tp() != 0.0;
  const bool fp = cm.fp() != 0.0;
  const bool tn = cm.tn() != 0.0;
  const bool fn = cm.fn() != 0.0;
  if (!tp && !tn) return CaseId::Case3;
  if (!fp && !fn) return CaseId::Case4;
  if (!tp && !fp) return CaseId::Case1;
  if (!tn && !fn) return CaseId::Case2;
  if (!tp) return CaseId::Case5;
  if (!tn) return CaseId::Case6;
  if (!fp) return CaseId::Case7;
  if (!fn) return CaseId::Case8;
  return CaseId::Case9;
}

IndexPoint IndexPoint::from(const ConfusionMatrix& cm) {
  return IndexPoint{accuracy(cm), precision(cm), recall(cm), false_alarm(cm),
                    cm.class_sizes()};
}

Ratio ni_from_counts(const ConfusionMatrix& cm) {
  const double w = cm.total();
  const double h = cached_target_entropy(cm.class_sizes());
  if (h == 0.0) return std::nullopt;
  auto term = [w](double count, double group) {
    return count == 0.0 ? 0.0 : (count / w) * std::log2(count / group);
  };
  const double predicted_pos = cm.tp() + cm.fp();
  const double predicted_neg = cm.tn() + cm.fn();
  const double numerator = -xl(cm.w1() / w) - xl(cm.w2() / w) +
                           term(cm.tp(), predicted_pos) + term(cm.fp(), predicted_pos) +
                           term(cm.tn(), predicted_neg) + term(cm.fn(), predicted_neg);
  return clamp_unit(numerator / h);
}

namespace forms {

double case5_acc(double a, ClassSizes s) {
  const double w = s.total();
  const double bracket =
      w * xl(a) + (a + 1.0) * xl(w) - xl(s.w2) - xl(a * w + s.w1);
  return bracket / (w * target_entropy_or_throw(s));
}

double case6_acc(double a, ClassSizes s) {
  const double w = s.total();
  const double bracket =
      w * xl(a) + (a + 1.0) * xl(w) - xl(s.w1) - xl(a * w + s.w2);
  return bracket / (w * target_entropy_or_throw(s));
}

double case6_pre(double p, ClassSizes s) {
  const double w = s.total();
  const double bracket = s.w2 / (1.0 - p) * xl(p) + s.w2 * std::log2(1.0 - p) +
                         xl(w) - xl(s.w1) - xl(s.w2);
  return bracket / (w * target_entropy_or_throw(s));
}

double case6_rec(double r, ClassSizes s) {
  const double w = s.total();
  const double bracket =
      s.w1 * xl(r) + xl(w) - (1.0 - r) * xl(s.w1) - xl(r * s.w1 + s.w2);
  return bracket / (w * target_entropy_or_throw(s));
}

double case7_acc(double a, ClassSizes s) {
  const double w = s.total();
  const double bracket = w * xl(1.0 - a) + (2.0 - a) * xl(w) - xl(s.w1) -
                         xl(s.w1 + 2.0 * s.w2 - a * w);
  return bracket / (w * target_entropy_or_throw(s));
}

double case7_rec(double r, ClassSizes s) {
  const double w = s.total();
  const double bracket =
      s.w1 * xl(1.0 - r) + xl(w) - r * xl(s.w1) - xl(w - r * s.w1);
  return bracket / (w * target_entropy_or_throw(s));
}

double case8_acc(double a, ClassSizes s) {
  const double w = s.total();
  const double bracket = w * xl(1.0 - a) + (2.0 - a) * xl(w) - xl(s.w2) -
                         xl(s.w2 + 2.0 * s.w1 - a * w);
  return bracket / (w * target_entropy_or_throw(s));
}

double case8_pre(double p, ClassSizes s) {
  const double w = s.total();
  const double bracket = s.w1 / p * xl(1.0 - p) + s.w1 * std::log2(p) + xl(w) -
                         xl(s.w1) - xl(s.w2);
  return bracket / (w * target_entropy_or_throw(s));
}

double case9_apr(double a, double p, double r) {
  const double d = p + r - 2.0 * p * r;
  const double q = p * (1.0 - a) / d;
  const double h = -xl(q) - xl(1.0 - q);
  if (h == 0.0) throw DomainError("target entropy is zero");
  const double bracket = p * (1.0 - a) * xl(1.0 - r) + r * (1.0 - a) * xl(1.0 - p) -
                         p * r * xl(1.0 - a) + xl(a * p + a * r - p * r - a * p * r) -
                         xl(a * p + r - 2.0 * p * r) - xl(a * r + p - 2.0 * p * r);
  return (std::log2(d) + bracket / d) / h;
}

namespace {

template <typename XLog>
double pr_form_with(double p, double r, ClassSizes s, XLog&& xlog) {
  const double w1 = s.w1, w2 = s.w2, w = s.total();
  const double tn_scaled = p * r * w1 + p * w2 - r * w1;
  const double neg_column_scaled = p * w1 + p * w2 - r * w1;
  const double bracket = w1 * xlog(p) + p * w1 * xlog(1.0 - r) +
                         r * w1 * xlog(1.0 - p) - p * r * xlog(w1) - p * xlog(w2) +
                         xlog(tn_scaled) - xlog(neg_column_scaled);
  return (std::log2(w) + bracket / (p * w)) / target_entropy_or_throw(s);
}

double fr_bracket(double f, double r, ClassSizes s) {
  const double w1 = s.w1, w2 = s.w2;
  return w1 * xl(r) + w1 * xl(1.0 - r) + w2 * xl(f) + w2 * xl(1.0 - f) -
         xl(r * w1 + f * w2) - xl(w1 * (1.0 - r) + w2 * (1.0 - f));
}

}  // namespace

double pr_form(double p, double r, ClassSizes s) {
  return pr_form_with(p, r, s, [](double x) { return xlog2x(x); });
}

double pr_form_real_part(double p, double r, ClassSizes s) {
  return pr_form_with(p, r, s, [](double x) { return xlog2x_real_part(x); });
}

double fr_form(double f, double r, ClassSizes s) {
  return (std::log2(s.total()) + fr_bracket(f, r, s) / s.total()) /
         target_entropy_or_throw(s);
}

double fr_form_verbatim(double f, double r, ClassSizes s) {
  return (fr_bracket(f, r, s) / s.total()) / target_entropy_or_throw(s);
}

}  // namespace forms

double ni_case5(double a, ClassSizes sizes) {
  require_sizes(sizes);
  require_in(a, 0.0, sizes.w2 / sizes.total(), true, false, "accuracy");
  return clamp_unit(forms::case5_acc(a, sizes));
}

double ni_case6(const IndexPoint& point, Index via) {
  const ClassSizes s = point.sizes;
  require_sizes(s);
  const double x = ratio_of(point, via);
  switch (via) {
    case Index::Accuracy:
      require_in(x, 0.0, s.w1 / s.total(), true, false, "accuracy");
      return clamp_unit(forms::case6_acc(x, s));
    case Index::Precision:
      require_in(x, 0.0, s.positive_fraction(), true, false, "precision");
      return clamp_unit(forms::case6_pre(x, s));
    case Index::Recall:
      require_in(x, 0.0, 1.0, true, false, "recall");
      return clamp_unit(forms::case6_rec(x, s));
    default:
      unsupported("case 6", via);
  }
}

double ni_case7(const IndexPoint& point, Index via) {
  const ClassSizes s = point.sizes;
  require_sizes(s);
  const double x = ratio_of(point, via);
  switch (via) {
    case Index::Accuracy:
      require_in(x, s.w2 / s.total(), 1.0, false, true, "accuracy");
      return clamp_unit(forms::case7_acc(x, s));
    case Index::Recall:
      require_in(x, 0.0, 1.0, false, true, "recall");
      return clamp_unit(forms::case7_rec(x, s));
    default:
      unsupported("case 7", via);
  }
}

double ni_case8(const IndexPoint& point, Index via) {
  const ClassSizes s = point.sizes;
  require_sizes(s);
  const double x = ratio_of(point, via);
  switch (via) {
    case Index::Accuracy:
      require_in(x, s.w1 / s.total(), 1.0, false, true, "accuracy");
      return clamp_unit(forms::case8_acc(x, s));
    case Index::Precision:
      require_in(x, s.positive_fraction(), 1.0, false, true, "precision");
      return clamp_unit(forms::case8_pre(x, s));
    default:
      unsupported("case 8", via);
  }
}

double positive_fraction_from_apr(double a, double p, double r) {
  const double d = p + r - 2.0 * p * r;
  if (d == 0.0) throw DomainError("p + r - 2pr = 0: class balance is not recoverable");
  const double q = p * (1.0 - a) / d;
  if (!(q > 0.0) || !(q < 1.0) || !std::isfinite(q)) {
    throw DomainError("(a, p, r) implies a nonpositive class ratio");
  }
  return q;
}

double ni_case9_apr(double a, double p, double r) {
  require_in(a, 0.0, 1.0, true, true, "accuracy");
  require_in(p, 0.0, 1.0, true, true, "precision");
  require_in(r, 0.0, 1.0, true, true, "recall");
  const double q = positive_fraction_from_apr(a, p, r);
  // Per-sample fractions of the implied matrix; all four must be nonnegative.
  const double tp = r * q;
  const double fp = tp * (1.0 - p) / p;
  const double fn = (1.0 - r) * q;
  const double tn = 1.0 - tp - fp - fn;
  if (tn < -kRangeSlack) throw DomainError("(a, p, r) is not attained by any matrix");
  return clamp_unit(forms::case9_apr(a, p, r));
}

double accuracy_from_pr(double p, double r, ClassSizes sizes) {
  require_sizes(sizes);
  if (p == 0.0) throw DomainError("accuracy_from_pr: precision is zero");
  require_in(p, 0.0, 1.0, true, false, "precision");
  require_in(r, 0.0, 1.0, false, false, "recall");
  return (2.0 * p * r * sizes.w1 + p * sizes.w2 - r * sizes.w1) / (p * sizes.total());
}

double ni_from_pr(double p, double r, ClassSizes sizes) {
  require_sizes(sizes);
  require_in(p, 0.0, 1.0, true, false, "precision");
  require_in(r, 0.0, 1.0, false, false, "recall");
  const double fp = r * sizes.w1 * (1.0 - p) / p;
  if (fp > sizes.w2 * (1.0 + kRangeSlack)) {
    throw DomainError("(precision, recall) lies outside the feasible region");
  }
  return clamp_unit(forms::pr_form(p, r, sizes));
}

double precision_from_fr(double f, double r, ClassSizes sizes) {
  require_sizes(sizes);
  require_in(f, 0.0, 1.0, false, false, "false alarm");
  require_in(r, 0.0, 1.0, false, false, "recall");
  const double denom = r * sizes.w1 + f * sizes.w2;
  if (denom == 0.0) throw DomainError("precision is undefined when r = f = 0");
  return r * sizes.w1 / denom;
}

double ni_from_fr(double f, double r, ClassSizes sizes) {
  target_entropy_or_throw(sizes);
  require_in(f, 0.0, 1.0, false, false, "false alarm");
  require_in(r, 0.0, 1.0, false, false, "recall");
  return clamp_unit(forms::fr_form(f, r, sizes));
}

double DispatchResult::max_deviation() const {
  double worst = 0.0;
  for (const auto& fv : evaluated()) worst = std::max(worst, std::abs(fv.value - direct));
  return worst;
}

DispatchResult dispatch_ni(const ConfusionMatrix& cm, double tolerance) {
  const Ratio direct = normalized_mutual_information(cm);
  if (!direct) throw DomainError("target entropy is zero");

  DispatchResult out;
  out.case_id = classify_case(cm);
  out.direct = *direct;
  auto push = [&out](std::string_view form, double value) {
    out.forms[out.form_count++] = FormValue{form, value};
  };

  const IndexPoint point = IndexPoint::from(cm);
  switch (out.case_id) {
    case CaseId::Case1: push("case1:zero", 0.0); break;
    case CaseId::Case2: push("case2:zero", 0.0); break;
    case CaseId::Case3: push("case3:one", 1.0); break;
    case CaseId::Case4: push("case4:one", 1.0); break;
    case CaseId::Case5: push("case5:A", ni_case5(*point.a, point.sizes)); break;
    case CaseId::Case6:
      push("case6:R", ni_case6(point, Index::Recall));
      push("case6:A", ni_case6(point, Index::Accuracy));
      push("case6:P", ni_case6(point, Index::Precision));
      break;
    case CaseId::Case7:
      push("case7:R", ni_case7(point, Index::Recall));
      push("case7:A", ni_case7(point, Index::Accuracy));
      break;
    case CaseId::Case8:
      push("case8:P", ni_case8(point, Index::Precision));
      push("case8:A", ni_case8(point, Index::Accuracy));
      break;
    case CaseId::Case9:
      push("case9:APR", ni_case9_apr(*point.a, *point.p, *point.r));
      push("normal:PR", ni_from_pr(*point.p, *point.r, point.sizes));
      push("normal:FR", ni_from_fr(*point.f, *point.r, point.sizes));
      break;
  }
  out.quarantined = out.max_deviation() > tolerance;
  return out;
}

std::span<const Erratum> known_errata() {
  static constexpr std::array<Erratum, 5> kErrata{{
      {"precision-definition",
       "precision is typeset as TP/(TP+FN), identical to recall; the accuracy and "
       "precision bridges only hold for TP/(TP+FP), which is what is implemented"},
      {"fr-form-missing-log-total",
       "the false-alarm/recall form is typeset without the leading log2(w1+w2) "
       "term; verbatim it equals -log2(w1+w2)/H(T) on the F = R line instead of 0 "
       "(forms::fr_form_verbatim)"},
      {"apr-and-pr-forms-operator",
       "the normal-case (A,P,R) and (P,R) forms are typeset with a line break "
       "between the leading logarithm and the bracket; the missing operator is '+'"},
      {"beta-R-coefficient",
       "the beta_R ordinate coefficient of log2(w1/2 + w2) reads (w1+w2)/(w1+w2) "
       "times 1/2; the value consistent with both recall curves is (w1/2+w2)/(w1+w2)"},
      {"accuracy-map-domains",
       "the accuracy-map curve domains (case 5 on (0,0.5], case 8 on [0.5,1), "
       "case 6 up to w2/w, case 7 from w1/w) are reachable only when w1 = w2; "
       "for w1 > w2 the curves are sampled on their observed domains"},
  }};
  return kErrata;
}

}  // namespace nieval
