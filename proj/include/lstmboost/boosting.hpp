#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lstmboost/error.hpp"
#include "lstmboost/example.hpp"
#include "lstmboost/sample_weights.hpp"

namespace lstmboost {

/// Data-layer labels are {0,1}; inside boosting they are {-1,+1}.
struct LabelConvention {
  int negative = 0;
  int positive = 1;

  int to_signed(int label) const noexcept { return label == positive ? 1 : -1; }
  int to_label(int signed_label) const noexcept { return signed_label > 0 ? positive : negative; }

  friend bool operator==(const LabelConvention&, const LabelConvention&) = default;
};

template <class L>
concept WeakClassifier = requires(const L& learner, std::span<const double> x) {
  { learner.predict(x) } -> std::convertible_to<int>;  // -1 or +1
};

template <class T>
concept WeakLearnerTrainer =
    requires(const T& trainer, std::span<const EncodedExample> examples, const SampleWeights& d,
             std::uint64_t seed) {
      typename T::Learner;
      { trainer.train(examples, d, seed) } -> std::same_as<typename T::Learner>;
    } && WeakClassifier<typename T::Learner>;

template <WeakClassifier L>
struct Round {
  double alpha = 0.0;
  L learner;
};

/// Additive model: margin(x) = sum over rounds of alpha_t * h_t(x).
template <WeakClassifier L>
struct Ensemble {
  std::vector<Round<L>> rounds;
  LabelConvention convention;
};

struct BoostConfig {
  std::size_t rounds = 10;
  double epsilon_floor = 1e-10;
  std::uint64_t seed = 0;

  void validate() const;
};

/// One boosting attempt. Rejected attempts (epsilon >= 0.5) carry alpha 0.
struct RoundLog {
  std::size_t round = 0;  // 1-based attempt index
  double epsilon = 0.0;
  double alpha = 0.0;
  bool accepted = false;
  bool early_stop = false;
  std::vector<double> weights_after;  // distribution handed to the next attempt
};

template <WeakClassifier L>
struct BoostResult {
  Ensemble<L> ensemble;
  std::vector<RoundLog> log;
};

struct Prediction {
  int label = 0;
  double margin = 0.0;
};

SampleWeights init_weights(std::size_t n);

/// Sum of d_i over positions where the signed prediction is wrong.
double weighted_error(std::span<const int> preds, std::span<const int> truths,
                      const SampleWeights& d);

/// 0.5 * ln((1 - eps) / eps) after clamping eps into [floor, 1 - floor].
double alpha_for_error(double epsilon, double epsilon_floor = 1e-10);

/// d'_i proportional to d_i * exp(-alpha * truth_i * pred_i).
SampleWeights update_weights(const SampleWeights& d, double alpha, std::span<const int> preds,
                             std::span<const int> truths);

/// Product of 2*sqrt(eps_t (1 - eps_t)) over accepted rounds; an upper bound
/// on the ensemble's training error.
double training_error_bound(std::span<const RoundLog> log);

template <WeakClassifier L>
std::vector<int> predict_signed(const L& learner, std::span<const EncodedExample> examples) {
  std::vector<int> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) out.push_back(learner.predict(ex.features) > 0 ? 1 : -1);
  return out;
}

struct NoRoundObserver {
  template <class L>
  void operator()(const RoundLog&, const L&) const noexcept {}
};

/// Discrete AdaBoost. An attempt with weighted error >= 0.5 is discarded and
/// the weights reset to uniform; the attempt still counts toward cfg.rounds.
/// A near-perfect learner (error <= floor) is accepted with the clamped error
/// and ends training. Attempt t trains with seed cfg.seed + t.
template <WeakLearnerTrainer T, class Observer = NoRoundObserver>
BoostResult<typename T::Learner> boost_train(std::span<const EncodedExample> examples,
                                             const BoostConfig& cfg, const T& trainer,
                                             Observer&& on_round = {}) {
  cfg.validate();
  if (examples.empty()) throw ArgumentError("boost_train: no examples");
  BoostResult<typename T::Learner> result;
  const LabelConvention& conv = result.ensemble.convention;

  std::vector<int> truths;
  truths.reserve(examples.size());
  bool has_pos = false;
  bool has_neg = false;
  for (const auto& ex : examples) {
    truths.push_back(conv.to_signed(ex.label));
    (truths.back() > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) throw DataError("boost_train: training data contains a single class");

  SampleWeights d = init_weights(examples.size());
  for (std::size_t t = 1; t <= cfg.rounds; ++t) {
    auto learner = trainer.train(examples, d, cfg.seed + t);
    const std::vector<int> preds = predict_signed(learner, examples);
    RoundLog entry;
    entry.round = t;
    entry.epsilon = weighted_error(preds, truths, d);

    if (entry.epsilon >= 0.5) {
      d = init_weights(examples.size());
      entry.weights_after.assign(d.values().begin(), d.values().end());
      on_round(entry, learner);
      result.log.push_back(std::move(entry));
      continue;
    }
    entry.accepted = true;
    if (entry.epsilon <= cfg.epsilon_floor) {
      entry.epsilon = cfg.epsilon_floor;
      entry.alpha = alpha_for_error(entry.epsilon, cfg.epsilon_floor);
      entry.early_stop = true;
    } else {
      entry.alpha = alpha_for_error(entry.epsilon, cfg.epsilon_floor);
      d = update_weights(d, entry.alpha, preds, truths);
    }
    entry.weights_after.assign(d.values().begin(), d.values().end());
    on_round(entry, learner);
    result.ensemble.rounds.push_back({entry.alpha, std::move(learner)});
    const bool stop = entry.early_stop;
    result.log.push_back(std::move(entry));
    if (stop) break;
  }
  if (result.ensemble.rounds.empty()) {
    throw TrainingError("no weak learner beat chance in " + std::to_string(cfg.rounds) +
                        " attempts");
  }
  return result;
}

/// Label is positive iff the margin is strictly positive; a zero margin maps
/// to the negative label. Uses only the first `max_rounds` rounds.
template <WeakClassifier L>
Prediction ensemble_predict(const Ensemble<L>& e, std::span<const double> x,
                            std::size_t max_rounds = SIZE_MAX) {
  if (e.rounds.empty()) throw ArgumentError("ensemble_predict: empty ensemble");
  double margin = 0.0;
  const std::size_t n = std::min(max_rounds, e.rounds.size());
  for (std::size_t t = 0; t < n; ++t) {
    margin += e.rounds[t].alpha * static_cast<double>(e.rounds[t].learner.predict(x) > 0 ? 1 : -1);
  }
  return {e.convention.to_label(margin > 0.0 ? 1 : -1), margin};
}

/// Entry k-1 is the unweighted training error of the first k rounds.
template <WeakClassifier L>
std::vector<double> staged_train_error(const Ensemble<L>& e,
                                       std::span<const EncodedExample> examples) {
  if (e.rounds.empty()) throw ArgumentError("staged_train_error: empty ensemble");
  if (examples.empty()) throw ArgumentError("staged_train_error: no examples");
  std::vector<double> margins(examples.size(), 0.0);
  std::vector<double> out;
  out.reserve(e.rounds.size());
  for (const auto& round : e.rounds) {
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < examples.size(); ++i) {
      margins[i] +=
          round.alpha * static_cast<double>(round.learner.predict(examples[i].features) > 0 ? 1 : -1);
      const int label = e.convention.to_label(margins[i] > 0.0 ? 1 : -1);
      if (label != examples[i].label) ++wrong;
    }
    out.push_back(static_cast<double>(wrong) / static_cast<double>(examples.size()));
  }
  return out;
}

/// One-feature threshold classifier: predicts +1 when
/// polarity * (x[feature] - threshold) > 0.
struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  int polarity = 1;

  int predict(std::span<const double> x) const {
    return static_cast<double>(polarity) * (x[feature] - threshold) > 0.0 ? 1 : -1;
  }

  friend bool operator==(const Stump&, const Stump&) = default;
};

/// Exhaustive weighted-error minimization over features, candidate
/// thresholds (one below the minimum, every midpoint between consecutive
/// distinct values, one above the maximum) and both polarities. Ties keep the
/// earliest candidate: lowest feature, smallest threshold, positive polarity.
struct StumpTrainer {
  using Learner = Stump;
  Stump train(std::span<const EncodedExample> examples, const SampleWeights& d,
              std::uint64_t seed) const;
};

}  // namespace lstmboost
