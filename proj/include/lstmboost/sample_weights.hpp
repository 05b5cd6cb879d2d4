#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lstmboost {

/// Probability distribution over training examples: non-negative entries
/// summing to one.
class SampleWeights {
 public:
  /// Equal mass 1/n on each of n examples. Throws ArgumentError for n = 0.
  static SampleWeights uniform(std::size_t n);
  /// Normalizes non-negative raw masses. Throws ArgumentError on negative,
  /// non-finite or all-zero input.
  static SampleWeights from_raw(std::span<const double> raw);

  std::size_t size() const noexcept { return d_.size(); }
  double operator[](std::size_t i) const { return d_[i]; }
  std::span<const double> values() const noexcept { return d_; }

  friend bool operator==(const SampleWeights&, const SampleWeights&) = default;

 private:
  explicit SampleWeights(std::vector<double> d) : d_(std::move(d)) {}
  std::vector<double> d_;
};

}  // namespace lstmboost
