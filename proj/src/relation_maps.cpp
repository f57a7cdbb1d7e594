#include "nieval/relation_maps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nieval/errors.hpp"
#include "nieval/info_theory.hpp"

namespace nieval {

namespace {

constexpr double kSlack = 1e-12;

using FormFn = double (*)(double, ClassSizes);

struct CurveDef {
  const char* name;
  const char* formula;
  FormFn eval;
  Domain printed;
  Domain reachable;
};

void require_canonical(ClassSizes s) {
  if (!(s.w2 > 0.0) || !std::isfinite(s.w1) || !std::isfinite(s.w2)) {
    throw InputError("class sizes must be positive and finite");
  }
  if (s.w1 < s.w2) {
    throw InputError("relation maps require w1 >= w2 (use --swap-classes)");
  }
}

double unit_clamp(double v) {
  if (v < 0.0 && v >= -kSlack) return 0.0;
  if (v > 1.0 && v <= 1.0 + kSlack) return 1.0;
  return v;
}

std::vector<CurveDef> curve_defs(MapKind map, ClassSizes s) {
  const double w = s.total();
  const double lo_frac = s.w2 / w;
  const double hi_frac = s.w1 / w;
  switch (map) {
    case MapKind::Accuracy:
      return {
          {"Gamma_alphaA_betaA", "case5:A", forms::case5_acc,
           {0.0, 0.5, true, false}, {0.0, lo_frac, true, false}},
          {"Gamma_gammaA_betaA", "case8:A", forms::case8_acc,
           {0.5, 1.0, false, true}, {hi_frac, 1.0, false, true}},
          {"Gamma_alphaA_etaA", "case6:A", forms::case6_acc,
           {0.0, lo_frac, true, false}, {0.0, hi_frac, true, false}},
          {"Gamma_gammaA_lambdaA", "case7:A", forms::case7_acc,
           {hi_frac, 1.0, false, true}, {lo_frac, 1.0, false, true}},
      };
    case MapKind::Precision:
      return {
          {"Gamma_alphaP_betaP", "case6:P", forms::case6_pre,
           {0.0, hi_frac, true, false}, {0.0, hi_frac, true, false}},
          {"Gamma_gammaP_betaP", "case8:P", forms::case8_pre,
           {hi_frac, 1.0, false, true}, {hi_frac, 1.0, false, true}},
      };
    case MapKind::Recall:
      return {
          {"Gamma_alphaR_betaR", "case6:R", forms::case6_rec,
           {0.0, 0.5, true, false}, {0.0, 1.0, true, false}},
          {"Gamma_gammaR_betaR", "case7:R", forms::case7_rec,
           {0.5, 1.0, false, true}, {0.0, 1.0, true, true}},
      };
  }
  return {};
}

bool within(const Domain& inner, const Domain& outer) {
  return inner.lo >= outer.lo - kSlack && inner.hi <= outer.hi + kSlack;
}

// Printed domains for the whole family when every one is reachable,
// otherwise observed domains for the whole family.
DomainSource family_source(const std::vector<CurveDef>& defs) {
  for (const auto& d : defs) {
    if (!within(d.printed, d.reachable)) return DomainSource::Observed;
  }
  return DomainSource::Printed;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  xs.back() = hi;
  return xs;
}

CurveSamples sample_curve(std::string name, std::string formula, Domain printed,
                          Domain sampled, DomainSource source, std::size_t n,
                          auto&& eval) {
  CurveSamples c{std::move(name), std::move(formula), printed, sampled, source, {}};
  c.points.reserve(n);
  for (double x : linspace(sampled.lo, sampled.hi, n)) {
    c.points.push_back({x, eval(x)});
  }
  return c;
}

double ratio_index(MapKind map, const ConfusionMatrix& cm, bool& defined) {
  Ratio r;
  switch (map) {
    case MapKind::Accuracy: r = accuracy(cm); break;
    case MapKind::Precision: r = precision(cm); break;
    case MapKind::Recall: r = recall(cm); break;
  }
  defined = r.has_value();
  return r.value_or(0.0);
}

}  // namespace

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Accuracy: return "acc";
    case MapKind::Precision: return "pre";
    case MapKind::Recall: return "rec";
  }
  return "?";
}

std::vector<SpecialPoint> special_points(MapKind map, ClassSizes s) {
  require_canonical(s);
  const double w = s.total();
  const double h = binary_target_entropy(s.w1, s.w2);
  switch (map) {
    case MapKind::Accuracy: {
      const double m = 1.5 * s.w1 + 0.5 * s.w2;
      const double beta = (-0.5 + 1.5 * std::log2(w) - s.w2 / w * std::log2(s.w2) -
                           m / w * std::log2(m)) /
                          h;
      return {{"alpha_A", 0.0, 1.0},
              {"beta_A", 0.5, beta},
              {"gamma_A", 1.0, 1.0},
              {"eta_A", s.w2 / w, 0.0},
              {"lambda_A", s.w1 / w, 0.0}};
    }
    case MapKind::Precision:
      return {{"alpha_P", 0.0, 1.0}, {"beta_P", s.w1 / w, 0.0}, {"gamma_P", 1.0, 1.0}};
    case MapKind::Recall: {
      const double m = 0.5 * s.w1 + s.w2;
      const double beta = (-s.w1 / (2.0 * w) + std::log2(w) -
                           s.w1 / (2.0 * w) * std::log2(s.w1) - m / w * std::log2(m)) /
                          h;
      return {{"alpha_R", 0.0, 1.0}, {"beta_R", 0.5, beta}, {"gamma_R", 1.0, 1.0}};
    }
  }
  return {};
}

std::vector<CurveSamples> boundary_curves(MapKind map, ClassSizes s, std::size_t n_samples) {
  require_canonical(s);
  if (n_samples < 2) throw InputError("boundary curves need at least two samples");
  const auto defs = curve_defs(map, s);
  const DomainSource source = family_source(defs);
  std::vector<CurveSamples> out;
  out.reserve(defs.size());
  for (const auto& d : defs) {
    const Domain sampled = source == DomainSource::Printed ? d.printed : d.reachable;
    out.push_back(sample_curve(d.name, d.formula, d.printed, sampled, source, n_samples,
                               [&](double x) { return unit_clamp(d.eval(x, s)); }));
  }
  return out;
}

double upper_envelope(MapKind map, ClassSizes s, double x) {
  require_canonical(s);
  if (x <= 0.0 || x >= 1.0) return 1.0;
  const auto defs = curve_defs(map, s);
  const DomainSource source = family_source(defs);
  std::optional<double> best;
  for (const auto& d : defs) {
    const Domain& dom = source == DomainSource::Printed ? d.printed : d.reachable;
    if (x >= dom.lo - kSlack && x <= dom.hi + kSlack) {
      const double v = d.eval(x, s);
      best = best ? std::max(*best, v) : v;
    }
  }
  if (!best) throw std::logic_error("envelope curves do not cover the index range");
  return std::max(0.0, *best);
}

double recall_bound_all_negatives_flagged(double p, ClassSizes s) {
  return p * s.w2 / ((1.0 - p) * s.w1);
}

double recall_bound_single_false_positive(double p, ClassSizes s) {
  return p / ((1.0 - p) * s.w1);
}

double recall_at_false_positives(double p, double false_positives, ClassSizes s) {
  // tp = p fp / (1 - p), recall = tp / w1.
  return p * false_positives / ((1.0 - p) * s.w1);
}

bool pr_feasible(double p, double r, ClassSizes s, Relaxation relaxation) {
  if (!(p >= 0.0 && p <= 1.0 && r >= 0.0 && r <= 1.0)) return false;
  const double tp = r * s.w1;
  const double scale = std::max(1.0, s.total());
  if (relaxation == Relaxation::Continuous) {
    // Closure of the attainable set: fp = tp (1 - p) / p <= w2.
    return tp * (1.0 - p) <= p * s.w2 + kSlack * scale;
  }
  if (p == 0.0) return r == 0.0;
  if (r == 0.0) return false;
  if (p == 1.0) return true;
  const double fp = tp * (1.0 - p) / p;
  return fp >= 1.0 - kSlack * scale && fp <= s.w2 + kSlack * scale;
}

FeasibleRegion feasible_region_pr(ClassSizes s, std::size_t n_samples) {
  require_canonical(s);
  if (n_samples < 2) throw InputError("feasible region needs at least two samples");
  FeasibleRegion region;
  region.alpha_ap = {"alpha_AP", s.w1 / s.total(), 1.0};

  const Domain many{0.0, s.w1 / s.total(), false, false};
  const Domain single{0.0, s.w1 / (s.w1 + 1.0), false, false};
  const auto src = DomainSource::Printed;
  region.curves.push_back(sample_curve(
      "Gamma_alphaRP1", "R=P*w2/((1-P)*w1)", many, many, src, n_samples,
      [&](double p) { return std::min(1.0, recall_bound_all_negatives_flagged(p, s)); }));
  region.curves.push_back(sample_curve(
      "Gamma_alphaRP2", "R=P/((1-P)*w1)", single, single, src, n_samples,
      [&](double p) { return std::min(1.0, recall_bound_single_false_positive(p, s)); }));
  region.curves.push_back(sample_curve(
      "fp=w2", "fp=w2", many, many, DomainSource::Observed, n_samples,
      [&](double p) { return std::min(1.0, recall_at_false_positives(p, s.w2, s)); }));
  region.curves.push_back(sample_curve(
      "fp=1", "fp=1", single, single, DomainSource::Observed, n_samples,
      [&](double p) { return std::min(1.0, recall_at_false_positives(p, 1.0, s)); }));

  const std::pair<const char*, double> derived[] = {{"fp=w2", s.w2}, {"fp=1", 1.0}};
  for (std::size_t c = 0; c < 2; ++c) {
    const auto& printed = region.curves[c];
    CurveMatch best{printed.name, "", INFINITY};
    for (const auto& [label, fp] : derived) {
      double gap = 0.0;
      for (const auto& pt : printed.points) {
        gap = std::max(gap, std::abs(pt.y - std::min(1.0, recall_at_false_positives(pt.x, fp, s))));
      }
      if (gap < best.max_gap) best = {printed.name, label, gap};
    }
    region.matches.push_back(best);
  }
  return region;
}

std::vector<PrPoint> integer_pr_points(std::uint32_t w1, std::uint32_t w2) {
  if (w1 == 0) throw InputError("recall needs at least one positive sample");
  std::vector<PrPoint> out;
  out.reserve(static_cast<std::size_t>(w1 + 1) * (w2 + 1));
  for (std::uint32_t tp = 0; tp <= w1; ++tp) {
    for (std::uint32_t fp = 0; fp <= w2; ++fp) {
      if (tp + fp == 0) continue;
      out.push_back({static_cast<double>(tp) / (tp + fp), static_cast<double>(tp) / w1, tp, fp});
    }
  }
  return out;
}

SurfaceGrid surface_pr(ClassSizes s, std::size_t nx, std::size_t ny, SurfaceMode mode) {
  require_canonical(s);
  if (nx < 2 || ny < 2) throw InputError("surface grid must be at least 2 x 2");
  SurfaceGrid g{"precision", "recall", linspace(0.0, 1.0, nx), linspace(0.0, 1.0, ny),
                {}, {}, s};
  g.values.resize(nx * ny);
  g.feasible.resize(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double p = g.xs[i];
      const double r = g.ys[j];
      const std::size_t k = g.index(i, j);
      g.feasible[k] = pr_feasible(p, r, s, Relaxation::Continuous);
      if (p == 0.0) continue;
      const double v = forms::pr_form_real_part(p, r, s);
      if (mode == SurfaceMode::Ideal) {
        g.values[k] = g.feasible[k] ? unit_clamp(v) : v;
      } else if (g.feasible[k]) {
        g.values[k] = unit_clamp(v);
      }
    }
  }
  return g;
}

SurfaceGrid surface_fr(ClassSizes s, std::size_t nx, std::size_t ny) {
  require_canonical(s);
  if (nx < 2 || ny < 2) throw InputError("surface grid must be at least 2 x 2");
  SurfaceGrid g{"false_alarm", "recall", linspace(0.0, 1.0, nx), linspace(0.0, 1.0, ny),
                {}, {}, s};
  g.values.resize(nx * ny);
  g.feasible.assign(nx * ny, true);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      g.values[g.index(i, j)] = unit_clamp(forms::fr_form(g.xs[i], g.ys[j], s));
    }
  }
  return g;
}

EnvelopeScatter envelope_scatter(MapKind map, std::uint32_t w1, std::uint32_t w2,
                                 std::uint32_t cap, double tolerance) {
  if (w2 == 0 || w1 < w2) throw InputError("envelope scatter requires w1 >= w2 >= 1");
  if (w1 + w2 > cap) {
    throw InputError("w1 + w2 = " + std::to_string(w1 + w2) + " exceeds the cap of " +
                     std::to_string(cap));
  }
  const ClassSizes sizes{static_cast<double>(w1), static_cast<double>(w2)};
  EnvelopeScatter out{map, sizes, {}, 0, 0.0};
  out.points.reserve(static_cast<std::size_t>(w1 + 1) * (w2 + 1));
  for (std::uint32_t tp = 0; tp <= w1; ++tp) {
    for (std::uint32_t fp = 0; fp <= w2; ++fp) {
      const auto cm = ConfusionMatrix::from_counts(tp, fp, w2 - fp, w1 - tp);
      bool defined = false;
      const double x = ratio_index(map, cm, defined);
      if (!defined) continue;
      const double ni = *normalized_mutual_information(cm);
      out.points.push_back({x, ni, tp, fp});
      const double excess = std::max(ni - upper_envelope(map, sizes, x), -ni);
      if (excess > tolerance) {
        ++out.violations;
        out.max_excess = std::max(out.max_excess, excess);
      }
    }
  }
  return out;
}

}  // namespace nieval
