#include "lstmboost/metrics.hpp"

#include "lstmboost/error.hpp"

namespace lstmboost {

ConfusionMatrix confusion(std::span<const int> preds, std::span<const int> truths) {
  if (preds.size() != truths.size()) throw ArgumentError("confusion: length mismatch");
  if (preds.empty()) throw ArgumentError("confusion: no predictions");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const bool p = preds[i] == 1;
    const bool t = truths[i] == 1;
    if (p && t) ++cm.tp;
    else if (p) ++cm.fp;
    else if (t) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

double f1_score(double precision, double recall) noexcept {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

MetricReport scores(const ConfusionMatrix& cm, std::string split) {
  if (cm.total() == 0) throw ArgumentError("scores: empty confusion matrix");
  MetricReport r;
  r.split = std::move(split);
  r.counts = cm;
  const auto tp = static_cast<double>(cm.tp);
  r.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  if (cm.tp + cm.fp > 0) {
    r.precision = tp / static_cast<double>(cm.tp + cm.fp);
  } else {
    r.precision_degenerate = true;
  }
  if (cm.tp + cm.fn > 0) {
    r.recall = tp / static_cast<double>(cm.tp + cm.fn);
  } else {
    r.recall_degenerate = true;
  }
  if (r.precision + r.recall > 0.0) {
    r.f1 = f1_score(r.precision, r.recall);
  } else {
    r.f1_degenerate = true;
  }
  return r;
}

CorrectIncorrect correct_incorrect(const ConfusionMatrix& cm) noexcept {
  return {cm.tp + cm.tn, cm.fp + cm.fn};
}

}  // namespace lstmboost
