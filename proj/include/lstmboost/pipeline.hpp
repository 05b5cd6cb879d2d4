#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lstmboost/boosting.hpp"
#include "lstmboost/data.hpp"
#include "lstmboost/lstm.hpp"
#include "lstmboost/metrics.hpp"
#include "lstmboost/model_io.hpp"

namespace lstmboost {

/// Settings for an end-to-end training run. Defaults reproduce the reference
/// protocol: 7:3 split, 50 epochs, learning rate 0.01 dropped by 0.1.
struct RunConfig {
  std::optional<std::filesystem::path> data_path;  // synthetic data when unset
  std::size_t synthetic_n = 500;
  double signal_strength = 4.0;
  TargetSpec target;
  double split_ratio = 0.7;
  bool stratified = false;
  std::uint64_t seed = 42;
  TrainConfig train;
  BoostConfig boost;
  SequenceMode mode = SequenceMode::Single;
  std::filesystem::path out_dir = ".";

  /// Applies one `key = value` setting; keys match the CLI long flags
  /// (seed, data, synthetic-n, signal, target, threshold, ratio, stratified,
  /// epochs, lr, lr-drop-factor, lr-drop-period, grad-clip, hidden, rounds,
  /// epsilon-floor, sequence-mode, out-dir). Throws ArgumentError.
  void set(std::string_view key, std::string_view value);
  /// Reads `key = value` lines; blank lines and `#` comments are ignored.
  void load_file(const std::filesystem::path& path);
};

using MessageSink = std::function<void(std::string_view)>;

struct RoundCurve {
  std::size_t round = 0;
  LossCurve curve;
};

struct TrainArtifacts {
  Model model;
  std::vector<RawRecord> records;  // full dataset as loaded or generated
  SplitDataset split;
  std::vector<RoundLog> boost_log;
  std::vector<RoundCurve> curves;  // one per attempt, including rejected ones
  MetricReport train_report;
  MetricReport test_report;
  std::vector<double> staged_train_error;
  double majority_rate = 0.0;  // share of the majority class in the test split
  std::optional<double> oracle_accuracy;  // synthetic data only
  std::vector<std::string> warnings;
};

/// split -> standardize -> boost -> evaluate, without touching the disk
/// beyond reading the input CSV.
TrainArtifacts train_pipeline(const RunConfig& cfg, const MessageSink& log = {});

/// Writes model.json, report.json, loss_curve.csv, boost_log.csv,
/// train_split.csv and test_split.csv (plus data.csv for synthetic runs).
void write_train_outputs(const TrainArtifacts& a, const RunConfig& cfg);

TrainArtifacts cmd_train(const RunConfig& cfg, const MessageSink& log = {});

/// Writes the CSV and returns the generative link's oracle accuracy.
double cmd_gen_data(std::size_t n, std::uint64_t seed, double signal_strength,
                    const std::filesystem::path& out_path);

MetricReport evaluate_records(const Model& m, std::span<const RawRecord> records,
                              std::string split_name);
/// Scores a labelled CSV and writes {"evaluation": {...}} to report_path.
MetricReport cmd_evaluate(const Model& m, const std::filesystem::path& data_path,
                          const std::filesystem::path& report_path);

/// Writes row_index,margin,label for every row of data_path.
std::vector<Prediction> cmd_predict(const Model& m, const std::filesystem::path& data_path,
                                    const std::filesystem::path& out_path);

struct GradcheckCase {
  std::uint64_t seed = 0;
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  std::size_t steps = 0;
  double max_error = 0.0;
};

struct GradcheckSummary {
  std::vector<GradcheckCase> cases;
  double max_error = 0.0;
  bool passed = false;
};

inline constexpr double kGradcheckTolerance = 1e-4;
inline constexpr double kGradcheckEps = 1e-5;

/// Ten random instances (D <= 5, H <= 8, T <= 4) seeded from `seed`.
GradcheckSummary cmd_gradcheck(std::uint64_t seed, std::optional<Gate> zeroed_gate = std::nullopt);

std::string format_report_json(const TrainArtifacts& a, const RunConfig& cfg);
std::string format_metric_json(const MetricReport& r);  // single block, pretty-printed

}  // namespace lstmboost
