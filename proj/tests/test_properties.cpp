#include <gtest/gtest.h>

#include "nieval/closed_form.hpp"
#include "nieval/info_theory.hpp"
#include "support.hpp"

namespace nieval {
namespace {

using testing::MatrixGen;

constexpr int kTrials = 5000;

double ni(const ConfusionMatrix& cm) {
  return *normalized_mutual_information(CountMatrix::from_confusion(cm));
}

TEST(Property, NiInUnitInterval) {
  MatrixGen gen(101);
  for (int i = 0; i < kTrials; ++i) {
    const double v = ni(gen.valid());
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Property, ClassRelabelingIsExact) {
  MatrixGen gen(102);
  for (int i = 0; i < kTrials; ++i) {
    const auto cm = gen.valid();
    const auto swapped = ConfusionMatrix::analysis(cm.tn(), cm.fn(), cm.tp(), cm.fp());
    EXPECT_EQ(ni(cm), ni(swapped));
  }
}

TEST(Property, PredictionFlipPreservesNi) {
  MatrixGen gen(103);
  for (int i = 0; i < kTrials; ++i) {
    const auto cm = gen.valid();
    EXPECT_EQ(ni(cm), ni(flip_predictions(cm)));
  }
}

TEST(Property, ScaleInvariance) {
  MatrixGen gen(104);
  for (int i = 0; i < kTrials; ++i) {
    const auto cm = gen.valid();
    const double k = 0.1 + 10.0 * gen.unit();
    const auto scaled = ConfusionMatrix::analysis(k * cm.tp(), k * cm.fp(), k * cm.tn(), k * cm.fn());
    EXPECT_NEAR(ni(cm), ni(scaled), 1e-12);
  }
}

TEST(Property, ExpansionMatchesEntropyRoute) {
  MatrixGen gen(105);
  for (int i = 0; i < kTrials; ++i) {
    const auto cm = gen.valid();
    EXPECT_NEAR(*ni_from_counts(cm), ni(cm), 1e-12);
  }
}

TEST(Property, AccuracyBridge) {
  MatrixGen gen(106);
  for (int i = 0; i < kTrials; ++i) {
    const auto cm = gen.full();
    const auto pt = IndexPoint::from(cm);
    EXPECT_NEAR(accuracy_from_pr(*pt.p, *pt.r, pt.sizes), *pt.a, 1e-12);
  }
}

TEST(Property, PrecisionBridge) {
  MatrixGen gen(107);
  for (int i = 0; i < kTrials; ++i) {
    const auto cm = gen.full();
    const auto pt = IndexPoint::from(cm);
    EXPECT_NEAR(precision_from_fr(*pt.f, *pt.r, pt.sizes), *pt.p, 1e-12);
  }
}

TEST(Property, DispatchAgreesForEveryZeroPattern) {
  MatrixGen gen(108);
  for (int mask = 0; mask < 15; ++mask) {
    for (int i = 0; i < 300; ++i) {
      const auto cm = gen.with_zeros(mask & 1, mask & 2, mask & 4, mask & 8, 60);
      if (cm.w1() == 0 || cm.w2() == 0) continue;
      const auto r = dispatch_ni(cm);
      EXPECT_FALSE(r.quarantined) << to_string(r.case_id);
      EXPECT_LT(r.max_deviation(), 1e-9);
    }
  }
}

TEST(Property, FractionalCountsDispatch) {
  MatrixGen gen(109);
  for (int i = 0; i < kTrials; ++i) {
    const auto cm = ConfusionMatrix::analysis(gen.unit() * 9 + 0.01, gen.unit() * 9 + 0.01,
                                              gen.unit() * 9 + 0.01, gen.unit() * 9 + 0.01);
    EXPECT_LT(dispatch_ni(cm).max_deviation(), 1e-9);
  }
}

}  // namespace
}  // namespace nieval
