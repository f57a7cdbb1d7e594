#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nieval/closed_form.hpp"
#include "nieval/confusion.hpp"

namespace nieval {

/// Index on the horizontal axis of an NI projection map.
enum class MapKind { Accuracy, Precision, Recall };

std::string_view to_string(MapKind kind);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct SpecialPoint {
  std::string name;
  double x = 0.0;
  double y = 0.0;
};

/// Closed interval [lo, hi]; the open flags record which ends are only limits.
struct Domain {
  double lo = 0.0;
  double hi = 1.0;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Where a sampled curve's domain came from.
enum class DomainSource { Printed, Observed };

struct CurveSamples {
  std::string name;
  /// Closed-form id, e.g. "case5:A" or "fp=w2".
  std::string formula;
  Domain printed;
  Domain sampled;
  DomainSource source = DomainSource::Printed;
  /// Strictly increasing in x. Open domain ends carry the limit value.
  std::vector<Point2> points;
};

/// Annotated points of a projection map. Requires w1 >= w2 > 0.
std::vector<SpecialPoint> special_points(MapKind map, ClassSizes sizes);

/// The envelope curves of a projection map, each sampled with `n_samples`
/// points. Uses the annotated domains when all of them are reachable by their
/// case, otherwise every curve falls back to its reachable domain.
std::vector<CurveSamples> boundary_curves(MapKind map, ClassSizes sizes,
                                          std::size_t n_samples);

/// Largest NI attainable at index value x according to the envelope curves.
double upper_envelope(MapKind map, ClassSizes sizes, double x);

// --- precision / recall feasibility -------------------------------------

/// Recall on the fp = w2 boundary: R = P w2 / ((1 - P) w1).
double recall_bound_all_negatives_flagged(double p, ClassSizes sizes);
/// Recall on the curve R = P / ((1 - P) w1), i.e. exactly one false positive.
double recall_bound_single_false_positive(double p, ClassSizes sizes);
/// Recall of the point with precision p and `false_positives` false positives.
double recall_at_false_positives(double p, double false_positives, ClassSizes sizes);

enum class Relaxation {
  /// Real-valued counts: 0 <= fp <= w2.
  Continuous,
  /// Integer counts: additionally fp >= 1 whenever p < 1.
  Integer,
};

/// Whether (p, r) is attainable for the given class sizes.
bool pr_feasible(double p, double r, ClassSizes sizes, Relaxation relaxation);

struct CurveMatch {
  std::string printed;
  std::string derived;
  double max_gap = 0.0;
};

struct FeasibleRegion {
  SpecialPoint alpha_ap;
  /// Gamma_alphaRP1, Gamma_alphaRP2 as typeset, then the derived fp = w2 and
  /// fp = 1 constraints. x = precision, y = recall.
  std::vector<CurveSamples> curves;
  /// For each typeset curve, the derived constraint it coincides with.
  std::vector<CurveMatch> matches;
};

FeasibleRegion feasible_region_pr(ClassSizes sizes, std::size_t n_samples);

struct PrPoint {
  double p = 0.0;
  double r = 0.0;
  std::uint32_t tp = 0;
  std::uint32_t fp = 0;
};

/// Every (precision, recall) pair attained by an integer matrix with the given
/// class sizes, ordered by (tp, fp). Matrices with tp + fp = 0 are skipped.
std::vector<PrPoint> integer_pr_points(std::uint32_t w1, std::uint32_t w2);

// --- surfaces --------------------------------------------------------------

enum class SurfaceMode { Ideal, Actual };

struct SurfaceGrid {
  std::string x_axis;
  std::string y_axis;
  std::vector<double> xs;
  std::vector<double> ys;
  /// Row-major over y: values[j * xs.size() + i] is the cell (xs[i], ys[j]).
  std::vector<Ratio> values;
  std::vector<bool> feasible;
  ClassSizes sizes;

  std::size_t index(std::size_t i, std::size_t j) const { return j * xs.size() + i; }
  const Ratio& at(std::size_t i, std::size_t j) const { return values[index(i, j)]; }
};

/// NI over (precision, recall). Ideal mode evaluates the formula formally
/// everywhere it is real-valued (values outside the feasible region may leave
/// [0, 1]); actual mode leaves infeasible cells undefined.
SurfaceGrid surface_pr(ClassSizes sizes, std::size_t nx, std::size_t ny, SurfaceMode mode);

/// NI over (false alarm, recall); every cell is feasible.
SurfaceGrid surface_fr(ClassSizes sizes, std::size_t nx, std::size_t ny);

// --- exhaustive envelope check ------------------------------------------------

struct ScatterPoint {
  double x = 0.0;
  double ni = 0.0;
  std::uint32_t tp = 0;
  std::uint32_t fp = 0;
};

struct EnvelopeScatter {
  MapKind map = MapKind::Accuracy;
  ClassSizes sizes;
  std::vector<ScatterPoint> points;
  std::size_t violations = 0;
  /// Largest amount by which a point exceeded the envelope (0 when none).
  double max_excess = 0.0;
};

/// Enumerates every integer matrix with class sizes (w1, w2), pairs its index
/// with its NI and counts points outside [0, upper_envelope] by more than
/// `tolerance`. Points with an undefined index are skipped.
EnvelopeScatter envelope_scatter(MapKind map, std::uint32_t w1, std::uint32_t w2,
                                 std::uint32_t cap = 200, double tolerance = 1e-9);

}  // namespace nieval
