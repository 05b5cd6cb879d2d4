#include "lstmboost/sample_weights.hpp"

#include <cmath>

#include "lstmboost/error.hpp"

namespace lstmboost {

SampleWeights SampleWeights::uniform(std::size_t n) {
  if (n == 0) throw ArgumentError("sample weights: need at least one example");
  return SampleWeights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SampleWeights SampleWeights::from_raw(std::span<const double> raw) {
  if (raw.empty()) throw ArgumentError("sample weights: need at least one example");
  double total = 0.0;
  for (double v : raw) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ArgumentError("sample weights: entries must be finite and non-negative");
    }
    total += v;
  }
  if (!(total > 0.0)) throw ArgumentError("sample weights: total mass is zero");
  std::vector<double> d(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) d[i] = raw[i] / total;
  return SampleWeights(std::move(d));
}

}  // namespace lstmboost
