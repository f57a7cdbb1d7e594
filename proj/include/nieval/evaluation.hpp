#pragma once

#include <span>
#include <string>
#include <vector>

#include "nieval/confusion.hpp"

namespace nieval {

/// A named classifier. The metrics are always derived from `cm`.
struct ModelRecord {
  std::string name;
  ConfusionMatrix cm;
  /// True when this record stands for the prediction-flipped model -M.
  bool complemented = false;

  MetricsReport report() const { return metrics_report(cm); }
  /// "M_4", or "-M_4" for the complement.
  std::string display_name() const;
};

/// The complement model: predictions flipped, flag toggled. NI is unchanged
/// and accuracy becomes 1 - accuracy.
ModelRecord complement(const ModelRecord& m);

/// Which selection rule decided a comparison.
///   Item1     higher NI wins when its accuracy is not below 0.5
///   Item2     higher NI loses when its accuracy is below 0.5
///   Item3     equal NI, higher accuracy wins
///   TieBreak  equal NI and accuracy; name order decides
enum class Rule { Item1, Item2, Item3, TieBreak };

std::string_view to_string(Rule rule);

enum class CompareMode {
  /// Models with accuracy below 0.5 are replaced by their complement first.
  Normalized,
  /// The pairwise rule applied to the models as given.
  Literal,
};

/// NI and accuracy values closer than this are treated as equal.
inline constexpr double kSelectionTolerance = 1e-12;

struct Comparison {
  /// The chosen model, in the form that was compared (complemented when
  /// normalization applied).
  ModelRecord winner;
  ModelRecord loser;
  Rule rule = Rule::TieBreak;
  /// True when the first argument won.
  bool first_wins = true;
};

/// Applies the NI + accuracy selection scheme to two models. Throws
/// DomainError when either NI is undefined.
Comparison compare(const ModelRecord& a, const ModelRecord& b,
                   CompareMode mode = CompareMode::Normalized);

struct Ranking {
  /// Best first.
  std::vector<ModelRecord> order;
  /// rationale[i] is the rule that placed order[i] above order[i + 1].
  std::vector<Rule> rationale;
  /// The pairwise rule did not produce a total order; `order` then follows the
  /// (NI desc, accuracy desc, name asc) key.
  bool cycle_detected = false;

  /// "-M_4 > M_1 > M_2".
  std::string to_string() const;
};

Ranking rank(std::span<const ModelRecord> models, CompareMode mode = CompareMode::Normalized);

enum class TableFormat { Text, Csv, Json };

/// Name, counts, accuracy, precision, recall and NI per model, ratios with
/// `decimals` places. Undefined ratios print as "undefined" (null in JSON).
std::string table_report(std::span<const ModelRecord> models, TableFormat format,
                         int decimals = 4);

}  // namespace nieval
