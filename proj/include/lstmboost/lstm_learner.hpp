#pragma once

#include <span>

#include "lstmboost/boosting.hpp"
#include "lstmboost/lstm.hpp"

namespace lstmboost {

/// Trained LSTM used as a boosting base classifier.
struct LstmLearner {
  LstmParams params;
  SequenceMode mode = SequenceMode::Single;
  LossCurve curve;  // training history; not part of the model file

  double probability(std::span<const double> features) const;
  int predict(std::span<const double> features) const { return probability(features) > 0.5 ? 1 : -1; }
};

struct LstmTrainer {
  using Learner = LstmLearner;

  TrainConfig config;
  SequenceMode mode = SequenceMode::Single;

  LstmLearner train(std::span<const EncodedExample> examples, const SampleWeights& d,
                    std::uint64_t seed) const;
};

static_assert(WeakLearnerTrainer<LstmTrainer>);
static_assert(WeakLearnerTrainer<StumpTrainer>);

}  // namespace lstmboost
