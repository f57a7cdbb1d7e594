// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "nieval/cli.hpp"
#include "nieval/closed_form.hpp"
#include "nieval/evaluation.hpp"
#include "nieval/info_theory.hpp"
#include "nieval/io.hpp"
#include "nieval/relation_maps.hpp"

namespace fs = std::filesystem;
using namespace nieval;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 = no runtime bound
  std::function<Outcome()> run;
};

struct TableRow {
  const char* name;
  std::uint64_t tp, fp, tn, fn;
  double a, p, r, ni;
};

constexpr TableRow kTable[] = {
    {"M_1", 25, 5, 45, 25, 0.7, 0.8333, 0.5, 0.1468},
    {"M_2", 30, 10, 40, 20, 0.7, 0.75, 0.6, 0.1245},
    {"M_3", 15, 5, 45, 35, 0.6, 0.75, 0.3, 0.0468},
    {"M_4", 15, 45, 5, 35, 0.2, 0.25, 0.3, 0.2958},
    {"M_5", 12, 26, 24, 38, 0.36, 0.3158, 0.24, 0.0611},
    {"M_6", 26, 12, 38, 24, 0.64, 0.6842, 0.52, 0.0611},
};

// Complement rows as typeset; precision differs from the counts.
struct ComplementRow {
  int source;
  double a, p, r, ni;
};
constexpr ComplementRow kComplements[] = {{3, 0.8, 0.75, 0.7, 0.2958},
                                          {4, 0.64, 0.6842, 0.76, 0.0611}};

constexpr double kRounding = 5e-5;

Outcome table_reproduction() {
  double worst = 0.0;
  auto check = [&](double got, double want) { worst = std::max(worst, std::abs(got - want)); };
  for (const auto& row : kTable) {
    const auto rep = metrics_report(ConfusionMatrix::from_counts(row.tp, row.fp, row.tn, row.fn));
    check(rep.accuracy, row.a);
    check(*rep.precision, row.p);
    check(*rep.recall, row.r);
    check(*rep.ni, row.ni);
  }
  std::string flagged;
  for (const auto& c : kComplements) {
    const auto& row = kTable[c.source];
    const auto rep = metrics_report(
        flip_predictions(ConfusionMatrix::from_counts(row.tp, row.fp, row.tn, row.fn)));
    check(rep.accuracy, c.a);
    check(*rep.recall, c.r);
    check(*rep.ni, c.ni);
    flagged += fmt::format(" -{} precision {:.4f} (typeset {:.4f});", row.name, *rep.precision, c.p);
  }
  return {worst <= kRounding,
          fmt::format("max |delta| {:.2e} over 6 rows + 2 complements; flagged:{}", worst, flagged)};
}

std::vector<ModelRecord> table_models() {
  std::vector<ModelRecord> ms;
  for (const auto& row : kTable) {
    ms.push_back({row.name, ConfusionMatrix::from_counts(row.tp, row.fp, row.tn, row.fn)});
  }
  return ms;
}

Outcome example_ranking() {
  const auto models = table_models();
  const std::string got = rank(models).to_string();
  const std::string want = "-M_4 > M_1 > M_2 > -M_5 > M_6 > M_3";
  return {got == want, got};
}

Outcome oracle_equivalence() {
  std::uint64_t checked = 0;
  std::uint64_t quarantined = 0;
  double worst = 0.0;
  for (std::uint64_t total = 1; total <= 200; ++total) {
    for (std::uint64_t tp = 0; tp <= total; ++tp) {
      for (std::uint64_t fp = 0; tp + fp <= total; ++fp) {
        for (std::uint64_t tn = 0; tp + fp + tn <= total; ++tn) {
          const std::uint64_t fn = total - tp - fp - tn;
          if (tp + fn == 0 || fp + tn == 0) continue;
          const auto r = dispatch_ni(ConfusionMatrix::from_counts(tp, fp, tn, fn));
          ++checked;
          worst = std::max(worst, r.max_deviation());
          if (r.quarantined) ++quarantined;
        }
      }
    }
  }
  return {quarantined == 0 && worst <= 1e-9,
          fmt::format("{} matrices, max deviation {:.2e}, quarantined {}", checked, worst,
                      quarantined)};
}

Outcome bridge_identities() {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::uint64_t> cell(0, 1000);
  double worst_a = 0.0;
  double worst_p = 0.0;
  int n = 0;
  while (n < 100000) {
    const auto cm = ConfusionMatrix::from_counts(cell(rng), cell(rng), cell(rng), cell(rng));
    const auto pt = IndexPoint::from(cm);
    if (!pt.p || !pt.r || !pt.f || *pt.p == 0.0) continue;
    worst_a = std::max(worst_a, std::abs(accuracy_from_pr(*pt.p, *pt.r, pt.sizes) - *pt.a));
    worst_p = std::max(worst_p, std::abs(precision_from_fr(*pt.f, *pt.r, pt.sizes) - *pt.p));
    ++n;
  }
  return {worst_a <= 1e-12 && worst_p <= 1e-12,
          fmt::format("{} matrices, accuracy bridge {:.2e}, precision bridge {:.2e}", n, worst_a,
                      worst_p)};
}

Outcome special_cases() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::uint64_t> cell(1, 500);
  struct Pattern {
    CaseId id;
    bool tp, fp, tn, fn;  // true = nonzero
    double want;
  };
  const Pattern patterns[] = {{CaseId::Case1, false, false, true, true, 0.0},
                              {CaseId::Case2, true, true, false, false, 0.0},
                              {CaseId::Case3, false, true, false, true, 1.0},
                              {CaseId::Case4, true, false, true, false, 1.0}};
  int bad = 0;
  for (const auto& pat : patterns) {
    for (int i = 0; i < 100; ++i) {
      auto c = [&](bool nz) { return nz ? cell(rng) : 0; };
      const auto tp = c(pat.tp);
      const auto fp = c(pat.fp);
      const auto tn = c(pat.tn);
      const auto fn = c(pat.fn);
      const auto cm = ConfusionMatrix::from_counts(tp, fp, tn, fn);
      const auto d = dispatch_ni(cm);
      const double direct = *normalized_mutual_information(CountMatrix::from_confusion(cm));
      if (d.case_id != pat.id || d.value() != pat.want || direct != pat.want) ++bad;
    }
  }
  return {bad == 0, fmt::format("400 matrices, {} not exact", bad)};
}

double find_y(const std::vector<SpecialPoint>& pts, const char* name) {
  for (const auto& p : pts) {
    if (p.name == name) return p.y;
  }
  return NAN;
}

Outcome envelope_property() {
  std::size_t points = 0;
  std::size_t violations = 0;
  double excess = 0.0;
  double junction = 0.0;
  for (std::uint32_t w2 = 1; w2 <= 30; ++w2) {
    for (std::uint32_t w1 = w2; w1 + w2 <= 60; ++w1) {
      const ClassSizes s{double(w1), double(w2)};
      for (auto map : {MapKind::Accuracy, MapKind::Precision, MapKind::Recall}) {
        const auto sc = envelope_scatter(map, w1, w2);
        points += sc.points.size();
        violations += sc.violations;
        excess = std::max(excess, sc.max_excess);
      }
      const double q = s.positive_fraction();
      const double ba = find_y(special_points(MapKind::Accuracy, s), "beta_A");
      const double br = find_y(special_points(MapKind::Recall, s), "beta_R");
      for (double gap : {forms::case5_acc(0.5, s) - ba, forms::case8_acc(0.5, s) - ba,
                         forms::case6_pre(q, s), forms::case8_pre(q, s),
                         forms::case6_rec(0.5, s) - br, forms::case7_rec(0.5, s) - br}) {
        junction = std::max(junction, std::abs(gap));
      }
    }
  }
  return {violations == 0 && junction <= 1e-9,
          fmt::format("{} points, {} outside envelope (max excess {:.2e}), junction gap {:.2e}",
                      points, violations, excess, junction)};
}

Outcome feasible_region_agreement() {
  std::size_t points = 0;
  std::size_t mismatches = 0;
  double curve_gap = 0.0;
  bool identified = true;
  for (std::uint32_t w2 = 1; w2 < 100; ++w2) {
    for (std::uint32_t w1 = w2; w1 + w2 <= 100; ++w1) {
      const ClassSizes s{double(w1), double(w2)};
      const auto region = feasible_region_pr(s, 101);
      // With a single negative sample fp = w2 and fp = 1 are the same curve.
      identified = identified && region.matches[0].derived == "fp=w2" &&
                   (region.matches[1].derived == "fp=1" || w2 == 1);
      curve_gap = std::max({curve_gap, region.matches[0].max_gap, region.matches[1].max_gap});
      for (const auto& pt : integer_pr_points(w1, w2)) {
        ++points;
        bool ok = pr_feasible(pt.p, pt.r, s, Relaxation::Continuous) &&
                  pr_feasible(pt.p, pt.r, s, Relaxation::Integer);
        if (pt.p < 1.0 && pt.tp > 0) {
          ok = ok && pt.r <= recall_bound_all_negatives_flagged(pt.p, s) + 1e-12 &&
               pt.r >= recall_bound_single_false_positive(pt.p, s) - 1e-12;
          if (pt.fp == w2) ok = ok && std::abs(pt.r - recall_bound_all_negatives_flagged(pt.p, s)) <= 1e-12;
          if (pt.fp == 1) ok = ok && std::abs(pt.r - recall_bound_single_false_positive(pt.p, s)) <= 1e-12;
        }
        if (!ok) ++mismatches;
      }
    }
  }
  return {mismatches == 0 && identified && curve_gap <= 1e-12,
          fmt::format("{} integer points, {} outside the fp=1..w2 band; typeset curves are "
                      "fp=w2 and fp=1 (gap {:.1e}); see docs/feasible-region.md",
                      points, mismatches, curve_gap)};
}

Outcome surface_sanity() {
  double diag = 0.0;
  double sym = 0.0;
  std::size_t mask_mismatch = 0;
  const std::size_t n = 201;
  for (const ClassSizes s : {ClassSizes{50, 50}, ClassSizes{60, 40}, ClassSizes{90, 10}}) {
    const auto fr = surface_fr(s, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      diag = std::max(diag, std::abs(*fr.at(i, i)));
      for (std::size_t j = 0; j < n; ++j) {
        sym = std::max(sym, std::abs(*fr.at(i, j) - *fr.at(n - 1 - i, n - 1 - j)));
      }
    }
    const auto pr = surface_pr(s, n, n, SurfaceMode::Actual);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const bool oracle = pr_feasible(pr.xs[i], pr.ys[j], s, Relaxation::Continuous);
        const bool shown = pr.at(i, j).has_value();
        if (pr.feasible[pr.index(i, j)] != oracle || (shown && !oracle) ||
            (oracle && i > 0 && !shown)) {
          ++mask_mismatch;
        }
      }
    }
  }
  return {diag <= 1e-12 && sym <= 1e-12 && mask_mismatch == 0,
          fmt::format("diagonal {:.2e}, symmetry {:.2e}, mask mismatches {}", diag, sym,
                      mask_mismatch)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "nieval_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> runs{
      {"map", "acc", "--w1", "60", "--w2", "40"},
      {"map", "pre", "--w1", "60", "--w2", "40"},
      {"map", "rec", "--w1", "60", "--w2", "40"},
      {"map", "pr-region", "--w1", "60", "--w2", "40"},
      {"map", "pr-surface", "--mode", "ideal", "--w1", "60", "--w2", "40"},
      {"map", "pr-surface", "--mode", "actual", "--w1", "60", "--w2", "40"},
      {"map", "fr-surface", "--w1", "60", "--w2", "40"},
  };
  std::size_t files = 0;
  std::size_t differing = 0;
  for (const char* side : {"a", "b"}) {
    fs::create_directories(root / side);
    for (auto args : runs) {
      args.push_back("--out-dir");
      args.push_back((root / side).string());
      std::ostringstream out, err;
      if (run_cli(args, out, err) != 0) return {false, "map failed: " + err.str()};
    }
  }
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    ++files;
    if (slurp(entry.path()) != slurp(root / "b" / entry.path().filename())) ++differing;
  }
  fs::remove_all(root);
  return {files == 14 && differing == 0,
          fmt::format("{} files written twice, {} differ", files, differing)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "table-reproduction", 1.0, table_reproduction},
      {2, "example-ranking", 1.0, example_ranking},
      {3, "oracle-equivalence", 60.0, oracle_equivalence},
      {4, "bridge-identities", 5.0, bridge_identities},
      {5, "special-cases", 0.0, special_cases},
      {6, "envelope-property", 30.0, envelope_property},
      {7, "feasible-region", 0.0, feasible_region_agreement},
      {8, "surface-sanity", 0.0, surface_sanity},
      {9, "determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    const std::string timing = c.budget_s == 0.0 ? fmt::format("{:.2f}s", secs)
                                                 : fmt::format("{:.2f}s, budget {:.0f}s", secs, c.budget_s);
    fmt::print("[{}] {} {}: {} ({}{})\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail, timing,
               in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
