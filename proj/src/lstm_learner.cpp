#include "lstmboost/lstm_learner.hpp"

namespace lstmboost {

double LstmLearner::probability(std::span<const double> features) const {
  return forward_sequence(params, to_sequence(features, mode)).prob;
}

LstmLearner LstmTrainer::train(std::span<const EncodedExample> examples, const SampleWeights& d,
                               std::uint64_t seed) const {
  std::vector<SequenceExample> seqs;
  seqs.reserve(examples.size());
  for (const auto& ex : examples) seqs.push_back({to_sequence(ex.features, mode), ex.label});
  TrainConfig cfg = config;
  cfg.seed = seed;
  TrainResult r = train_weak_learner(seqs, d, cfg);
  return {std::move(r.params), mode, std::move(r.curve)};
}

}  // namespace lstmboost
