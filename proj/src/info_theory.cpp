#include "nieval/info_theory.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "nieval/errors.hpp"
#include "nieval/xlog.hpp"

namespace nieval {

namespace {

constexpr double kClampSlack = 1e-12;

double ordered_sum(std::span<double> terms) {
  // Sums in ascending-magnitude order. The result depends only on the
  // multiset of terms, so relabeling rows or columns cannot change a bit.
  const auto by_magnitude = [](double a, double b) { return std::abs(a) < std::abs(b); };
  if (terms.size() > 16) {
    std::sort(terms.begin(), terms.end(), by_magnitude);
  } else {
    for (std::size_t i = 1; i < terms.size(); ++i) {
      const double t = terms[i];
      std::size_t j = i;
      for (; j > 0 && by_magnitude(t, terms[j - 1]); --j) terms[j] = terms[j - 1];
      terms[j] = t;
    }
  }
  CompensatedSum sum;
  for (double t : terms) sum.add(t);
  return sum.value();
}

// Scratch storage that stays on the stack for binary and small multiclass
// inputs.
class Scratch {
 public:
  explicit Scratch(std::size_t n) : size_(n) {
    if (n > inline_.size()) heap_.assign(n, 0.0);
  }
  std::span<double> view() {
    return heap_.empty() ? std::span<double>(inline_.data(), size_) : std::span<double>(heap_);
  }

 private:
  std::array<double, 16> inline_{};
  std::size_t size_;
  std::vector<double> heap_;
};

// Row-major K x K counts with a precomputed total.
struct Dense {
  std::size_t k;
  std::span<const double> c;
  double total;

  double at(std::size_t i, std::size_t j) const { return c[i * k + j]; }
};

double entropy_of(std::span<const double> sizes, double total) {
  Scratch buf(sizes.size());
  auto terms = buf.view();
  for (std::size_t i = 0; i < sizes.size(); ++i) terms[i] = -xlog2x(sizes[i] / total);
  return ordered_sum(terms);
}

double target_entropy_of(const Dense& m) {
  Scratch rows(m.k);
  auto r = rows.view();
  for (std::size_t i = 0; i < m.k; ++i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < m.k; ++j) s.add(m.at(i, j));
    r[i] = s.value();
  }
  return entropy_of(r, m.total);
}

double conditional_entropy_of(const Dense& m) {
  Scratch cols(m.k);
  auto col = cols.view();
  for (std::size_t j = 0; j < m.k; ++j) {
    CompensatedSum s;
    for (std::size_t i = 0; i < m.k; ++i) s.add(m.at(i, j));
    col[j] = s.value();
  }
  Scratch buf(m.c.size());
  auto terms = buf.view();
  std::size_t n = 0;
  for (std::size_t i = 0; i < m.k; ++i) {
    for (std::size_t j = 0; j < m.k; ++j) {
      const double w_ij = m.at(i, j);
      if (w_ij == 0.0) continue;
      terms[n++] = -(w_ij / m.total) * std::log2(w_ij / col[j]);
    }
  }
  return ordered_sum(terms.first(n));
}

Ratio nmi_of(const Dense& m) {
  const double h_t = target_entropy_of(m);
  if (h_t == 0.0) return std::nullopt;
  const double ni = (h_t - conditional_entropy_of(m)) / h_t;
  if (ni < 0.0 && ni >= -kClampSlack) return 0.0;
  if (ni > 1.0 && ni <= 1.0 + kClampSlack) return 1.0;
  return ni;
}

double validated_total(std::span<const double> values, const char* what) {
  CompensatedSum sum;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InputError(std::string(what) + " must be finite and nonnegative");
    }
    sum.add(v);
  }
  return sum.value();
}

}  // namespace

CountMatrix::CountMatrix(std::size_t k, std::vector<double> row_major)
    : k_(k), counts_(std::move(row_major)), total_(0.0) {
  if (k_ < 2) throw InputError("count matrix needs at least two classes");
  if (counts_.size() != k_ * k_) throw InputError("count matrix must be K x K");
  total_ = validated_total(counts_, "count matrix entries");
  if (total_ <= 0.0) throw InputError("count matrix total must be positive");
}

CountMatrix CountMatrix::from_confusion(const ConfusionMatrix& cm) {
  return CountMatrix(2, {cm.tp(), cm.fn(), cm.fp(), cm.tn()});
}

std::vector<double> CountMatrix::row_sums() const {
  std::vector<double> sums(k_, 0.0);
  for (std::size_t i = 0; i < k_; ++i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < k_; ++j) s.add(at(i, j));
    sums[i] = s.value();
  }
  return sums;
}

std::vector<double> CountMatrix::column_sums() const {
  std::vector<double> sums(k_, 0.0);
  for (std::size_t j = 0; j < k_; ++j) {
    CompensatedSum s;
    for (std::size_t i = 0; i < k_; ++i) s.add(at(i, j));
    sums[j] = s.value();
  }
  return sums;
}

double empirical_entropy(std::span<const double> class_sizes) {
  const double total = validated_total(class_sizes, "class sizes");
  if (total <= 0.0) throw InputError("class sizes are all zero");
  return entropy_of(class_sizes, total);
}

double target_entropy(const CountMatrix& m) {
  return target_entropy_of({m.k(), m.counts(), m.total()});
}

double conditional_entropy(const CountMatrix& m) {
  return conditional_entropy_of({m.k(), m.counts(), m.total()});
}

Ratio normalized_mutual_information(const CountMatrix& m) {
  return nmi_of({m.k(), m.counts(), m.total()});
}

Ratio normalized_mutual_information(const ConfusionMatrix& cm) {
  const std::array<double, 4> c{cm.tp(), cm.fn(), cm.fp(), cm.tn()};
  const double total = validated_total(c, "count matrix entries");
  if (total <= 0.0) throw InputError("count matrix total must be positive");
  return nmi_of({2, c, total});
}

double binary_target_entropy(double w1, double w2) {
  const std::array<double, 2> sizes{w1, w2};
  return empirical_entropy(sizes);
}

}  // namespace nieval
