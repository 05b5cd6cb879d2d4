#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace lstmboost {

/// Binary confusion counts; label 1 is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct MetricReport {
  std::string split;
  ConfusionMatrix counts;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when the metric's denominator was zero and it was reported as 0.
  bool precision_degenerate = false;
  bool recall_degenerate = false;
  bool f1_degenerate = false;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

ConfusionMatrix confusion(std::span<const int> preds, std::span<const int> truths);

/// Accuracy, precision, recall and F1 from the counts. Requires a non-empty
/// matrix.
MetricReport scores(const ConfusionMatrix& cm, std::string split = {});

/// F1 as the harmonic mean of given precision and recall (0 when both are 0).
double f1_score(double precision, double recall) noexcept;

struct CorrectIncorrect {
  std::size_t correct = 0;
  std::size_t incorrect = 0;
};

CorrectIncorrect correct_incorrect(const ConfusionMatrix& cm) noexcept;

}  // namespace lstmboost
