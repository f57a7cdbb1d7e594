#include "nieval/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include <fmt/format.h>
#include "json.hpp"

#include "nieval/errors.hpp"

namespace nieval {

namespace {

bool differ(double a, double b) { return std::abs(a - b) > kSelectionTolerance; }

ModelRecord normalized(const ModelRecord& m) {
  return accuracy(m.cm) < 0.5 ? complement(m) : m;
}

double defined_ni(const ModelRecord& m) {
  const Ratio ni = m.report().ni;
  if (!ni) throw DomainError("NI of model '" + m.display_name() + "' is undefined");
  return *ni;
}

// Strict name order used when NI and accuracy tie.
bool name_before(const ModelRecord& a, const ModelRecord& b) {
  if (a.name != b.name) return a.name < b.name;
  return !a.complemented && b.complemented;
}

std::string fixed(const Ratio& r, int decimals) {
  return r ? fmt::format("{:.{}f}", *r, decimals) : std::string("undefined");
}

std::string count_text(double c) {
  return std::floor(c) == c ? fmt::format("{:.0f}", c) : fmt::format("{}", c);
}

}  // namespace

std::string ModelRecord::display_name() const {
  return complemented ? "-" + name : name;
}

ModelRecord complement(const ModelRecord& m) {
  return ModelRecord{m.name, flip_predictions(m.cm), !m.complemented};
}

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::Item1: return "item1";
    case Rule::Item2: return "item2";
    case Rule::Item3: return "item3";
    case Rule::TieBreak: return "tie-break";
  }
  return "?";
}

Comparison compare(const ModelRecord& a, const ModelRecord& b, CompareMode mode) {
  const ModelRecord x = mode == CompareMode::Normalized ? normalized(a) : a;
  const ModelRecord y = mode == CompareMode::Normalized ? normalized(b) : b;
  const double ni_x = defined_ni(x);
  const double ni_y = defined_ni(y);
  const double acc_x = accuracy(x.cm);
  const double acc_y = accuracy(y.cm);

  auto result = [&](bool first, Rule rule) {
    return first ? Comparison{x, y, rule, true} : Comparison{y, x, rule, false};
  };

  if (differ(ni_x, ni_y)) {
    const bool x_higher = ni_x > ni_y;
    const double acc_higher = x_higher ? acc_x : acc_y;
    if (acc_higher < 0.5) return result(!x_higher, Rule::Item2);
    return result(x_higher, Rule::Item1);
  }
  if (differ(acc_x, acc_y)) return result(acc_x > acc_y, Rule::Item3);
  return result(!name_before(y, x), Rule::TieBreak);
}

std::string Ranking::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) out += " > ";
    out += order[i].display_name();
  }
  return out;
}

Ranking rank(std::span<const ModelRecord> models, CompareMode mode) {
  if (models.empty()) throw InputError("nothing to rank");
  std::vector<ModelRecord> pool;
  pool.reserve(models.size());
  for (const auto& m : models) {
    pool.push_back(mode == CompareMode::Normalized ? normalized(m) : m);
  }

  const std::size_t n = pool.size();
  std::vector<std::size_t> wins(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++wins[compare(pool[i], pool[j], mode).first_wins ? i : j];
    }
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return wins[a] > wins[b]; });

  Ranking out;
  // A tournament is transitive exactly when its score sequence is n-1, ..., 0.
  for (std::size_t k = 0; k < n; ++k) {
    if (wins[idx[k]] != n - 1 - k) out.cycle_detected = true;
  }
  if (out.cycle_detected) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const double ni_a = defined_ni(pool[a]), ni_b = defined_ni(pool[b]);
      if (differ(ni_a, ni_b)) return ni_a > ni_b;
      const double acc_a = accuracy(pool[a].cm), acc_b = accuracy(pool[b].cm);
      if (differ(acc_a, acc_b)) return acc_a > acc_b;
      return name_before(pool[a], pool[b]);
    });
  }

  for (std::size_t k : idx) out.order.push_back(pool[k]);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    out.rationale.push_back(compare(out.order[k], out.order[k + 1], mode).rule);
  }
  return out;
}

std::string table_report(std::span<const ModelRecord> models, TableFormat format,
                         int decimals) {
  static const char* kColumns[] = {"model", "TP", "FP", "TN", "FN",
                                   "accuracy", "precision", "recall", "NI"};
  std::vector<std::vector<std::string>> rows;
  rows.emplace_back(std::begin(kColumns), std::end(kColumns));
  bool any_complemented = false;
  for (const auto& m : models) {
    const auto rep = m.report();
    any_complemented |= m.complemented;
    rows.push_back({m.display_name(), count_text(m.cm.tp()), count_text(m.cm.fp()),
                    count_text(m.cm.tn()), count_text(m.cm.fn()), fixed(rep.accuracy, decimals),
                    fixed(rep.precision, decimals), fixed(rep.recall, decimals),
                    fixed(rep.ni, decimals)});
  }

  if (format == TableFormat::Json) {
    auto number = [](const std::string& s) -> nlohmann::json {
      if (s == "undefined") return nullptr;
      return nlohmann::json::parse(s);
    };
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& m = models[r - 1];
      nlohmann::json row;
      row["model"] = m.display_name();
      row["complemented"] = m.complemented;
      for (std::size_t c = 1; c < rows[r].size(); ++c) {
        std::string key(kColumns[c]);
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        row[key] = number(rows[r][c]);
      }
      arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
  }

  std::string out;
  if (format == TableFormat::Csv) {
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + row[c];
      out += "\n";
    }
    return out;
  }

  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0) {
        line += fmt::format("{:<{}}", row[c], width[c]);
      } else {
        line += fmt::format("  {:>{}}", row[c], width[c]);
      }
    }
    out += line + "\n";
  }
  if (any_complemented) {
    out += "-M: complement model; every index is computed from the prediction-flipped matrix\n";
  }
  return out;
}

}  // namespace nieval
