#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lstmboost/boosting.hpp"
#include "lstmboost/data.hpp"
#include "lstmboost/lstm_learner.hpp"

namespace lstmboost {

inline constexpr int kModelFormatVersion = 1;

/// Everything needed to score raw records: target definition, feature
/// scaling and the boosted LSTM ensemble.
struct Model {
  TargetSpec target;
  SequenceMode mode = SequenceMode::Single;
  Standardizer standardizer;
  Ensemble<LstmLearner> ensemble;

  std::size_t feature_count() const;
  /// Throws DataError if the feature vector does not fit the model.
  Prediction predict_features(std::span<const double> raw_features) const;
  Prediction predict(const RawRecord& r) const;
};

/// Versioned JSON. Floats are written in the shortest decimal form that
/// parses back to the identical double.
std::string model_to_json(const Model& m);
/// Throws DataError on malformed or inconsistent input.
Model model_from_json(std::string_view text);

void save_model(const Model& m, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace lstmboost
