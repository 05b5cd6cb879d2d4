#include "lstmboost/boosting.hpp"

#include <algorithm>
#include <cmath>

namespace lstmboost {

void BoostConfig::validate() const {
  if (rounds < 1) throw ArgumentError("boost config: rounds must be at least 1");
  if (!(epsilon_floor > 0.0 && epsilon_floor < 0.5)) {
    throw ArgumentError("boost config: epsilon_floor must lie in (0, 0.5)");
  }
}

SampleWeights init_weights(std::size_t n) { return SampleWeights::uniform(n); }

double weighted_error(std::span<const int> preds, std::span<const int> truths,
                      const SampleWeights& d) {
  if (preds.size() != truths.size() || preds.size() != d.size()) {
    throw ArgumentError("weighted_error: length mismatch");
  }
  double eps = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] != truths[i]) eps += d[i];
  }
  return eps;
}

double alpha_for_error(double epsilon, double epsilon_floor) {
  const double e = std::clamp(epsilon, epsilon_floor, 1.0 - epsilon_floor);
  return 0.5 * std::log((1.0 - e) / e);
}

SampleWeights update_weights(const SampleWeights& d, double alpha, std::span<const int> preds,
                             std::span<const int> truths) {
  if (preds.size() != truths.size() || preds.size() != d.size()) {
    throw ArgumentError("update_weights: length mismatch");
  }
  if (!std::isfinite(alpha)) throw ArgumentError("update_weights: alpha must be finite");
  std::vector<double> raw(d.size());
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    raw[i] = d[i] * std::exp(-alpha * static_cast<double>(truths[i] * preds[i]));
    total += raw[i];
  }
  if (!(total > 0.0)) throw InternalError("update_weights: all sample mass vanished");
  return SampleWeights::from_raw(raw);
}

double training_error_bound(std::span<const RoundLog> log) {
  double bound = 1.0;
  for (const auto& r : log) {
    if (r.accepted) bound *= 2.0 * std::sqrt(r.epsilon * (1.0 - r.epsilon));
  }
  return bound;
}

Stump StumpTrainer::train(std::span<const EncodedExample> examples, const SampleWeights& d,
                          std::uint64_t /*seed*/) const {
  if (examples.empty()) throw ArgumentError("stump: no examples");
  const std::size_t dims = examples.front().features.size();
  std::vector<int> truths;
  truths.reserve(examples.size());
  for (const auto& ex : examples) truths.push_back(ex.label == 1 ? 1 : -1);

  Stump best;
  double best_err = 2.0;
  std::vector<double> values(examples.size());
  for (std::size_t f = 0; f < dims; ++f) {
    for (std::size_t i = 0; i < examples.size(); ++i) values[i] = examples[i].features[f];
    std::ranges::sort(values);
    const auto last = std::unique(values.begin(), values.end());
    std::vector<double> thresholds;
    thresholds.push_back(values.front() - 1.0);
    for (auto it = values.begin(); it + 1 < last; ++it) thresholds.push_back(0.5 * (*it + *(it + 1)));
    thresholds.push_back(*(last - 1) + 1.0);

    for (double thr : thresholds) {
      for (int pol : {1, -1}) {
        const Stump cand{f, thr, pol};
        double err = 0.0;
        for (std::size_t i = 0; i < examples.size(); ++i) {
          if (cand.predict(examples[i].features) != truths[i]) err += d[i];
        }
        if (err < best_err) {
          best_err = err;
          best = cand;
        }
      }
    }
  }
  return best;
}

}  // namespace lstmboost
