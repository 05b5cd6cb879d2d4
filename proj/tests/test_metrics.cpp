#include <cmath>

#include "doctest.h"
#include "lstmboost/error.hpp"
#include "lstmboost/metrics.hpp"
#include "lstmboost/numerics.hpp"

using namespace lstmboost;

TEST_CASE("confusion counts") {
  CHECK(confusion(std::vector<int>{1, 0, 1}, std::vector<int>{1, 0, 1}) == ConfusionMatrix{2, 0, 0, 1});
  CHECK(confusion(std::vector<int>(5, 1), std::vector<int>(5, 0)) == ConfusionMatrix{0, 5, 0, 0});
  CHECK(confusion(std::vector<int>{1, 1, 0, 0}, std::vector<int>{1, 0, 1, 0}) == ConfusionMatrix{1, 1, 1, 1});
  CHECK_THROWS_AS(confusion(std::vector<int>{1}, std::vector<int>{1, 0}), ArgumentError);
  CHECK_THROWS_AS(confusion(std::vector<int>{}, std::vector<int>{}), ArgumentError);
}

TEST_CASE("scores on hand-evaluated counts") {
  const auto r = scores({3, 1, 2, 4});
  CHECK(r.accuracy == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(r.precision == 0.75);
  CHECK(r.recall == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(r.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_FALSE(r.precision_degenerate);
}

TEST_CASE("f1 from the published precision and recall") {
  CHECK(std::abs(f1_score(0.88, 0.77) - 0.8213333333333334) < 1e-12);
  CHECK(std::abs(f1_score(0.87, 0.57) - 0.68875) < 1e-12);
}

TEST_CASE("correct and incorrect totals") {
  const ConfusionMatrix train{100, 12, 40, 77};  // 177 correct, 52 wrong
  const auto ci = correct_incorrect(train);
  CHECK(ci.correct == 177);
  CHECK(ci.incorrect == 52);
  CHECK(std::abs(scores(train).accuracy - 0.7729257641921398) < 1e-12);

  const ConfusionMatrix test{60, 9, 44, 107};
  CHECK(correct_incorrect(test).correct == 167);
  CHECK(correct_incorrect(test).incorrect == 53);
  CHECK(std::abs(scores(test).accuracy - 0.7590909090909091) < 1e-12);

  CHECK(correct_incorrect({}).correct == 0);
  CHECK(correct_incorrect({}).incorrect == 0);
}

TEST_CASE("degenerate denominators report zero with a flag") {
  const auto none_predicted = scores({0, 0, 3, 2});
  CHECK(none_predicted.precision == 0.0);
  CHECK(none_predicted.precision_degenerate);
  CHECK(none_predicted.f1_degenerate);
  const auto no_positives = scores({0, 2, 0, 3});
  CHECK(no_positives.recall_degenerate);
  CHECK_THROWS_AS(scores({}), ArgumentError);
}

TEST_CASE("metric properties on random matrices") {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const ConfusionMatrix cm{rng.below(50), rng.below(50), rng.below(50), rng.below(50) + 1};
    const auto r = scores(cm);
    const auto ci = correct_incorrect(cm);
    CHECK(r.accuracy == static_cast<double>(ci.correct) / static_cast<double>(ci.correct + ci.incorrect));
    if (r.precision > 0.0 && r.recall > 0.0) {
      CHECK(r.f1 >= std::min(r.precision, r.recall) - 1e-15);
      CHECK(r.f1 <= std::max(r.precision, r.recall) + 1e-15);
    }
    CHECK(scores(cm) == r);

    // Relabel: class 0 becomes positive.
    std::vector<int> preds, truths;
    auto add = [&](std::size_t count, int p, int t) {
      for (std::size_t k = 0; k < count; ++k) {
        preds.push_back(p);
        truths.push_back(t);
      }
    };
    add(cm.tp, 1, 1);
    add(cm.fp, 1, 0);
    add(cm.fn, 0, 1);
    add(cm.tn, 0, 0);
    for (auto& v : preds) v = 1 - v;
    for (auto& v : truths) v = 1 - v;
    const auto swapped = scores(confusion(preds, truths));
    if (cm.tn + cm.fn > 0) {
      CHECK(swapped.precision == static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fn));
    }
    if (cm.tn + cm.fp > 0) {
      CHECK(swapped.recall == static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fp));
    }
    CHECK(swapped.accuracy == r.accuracy);
  }
}
