#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lstmboost/example.hpp"

namespace lstmboost {

enum class Gender { Male, Female, Other };
enum class Headset { HtcVive, OculusRift, PlayStationVr };

inline constexpr std::array<Gender, 3> kGenders = {Gender::Male, Gender::Female, Gender::Other};
inline constexpr std::array<Headset, 3> kHeadsets = {Headset::HtcVive, Headset::OculusRift,
                                                     Headset::PlayStationVr};

std::string_view to_string(Gender g) noexcept;
std::string_view to_string(Headset h) noexcept;
std::optional<Gender> parse_gender(std::string_view s) noexcept;
std::optional<Headset> parse_headset(std::string_view s) noexcept;

/// One row of the VR user-experience table.
struct RawRecord {
  int age = 0;
  Gender gender = Gender::Male;
  Headset headset = Headset::HtcVive;
  double duration = 0.0;  // minutes
  int motion_sickness = 0;
  int immersion_level = 0;

  friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

inline constexpr std::array<std::string_view, 6> kCsvColumns = {
    "Age", "Gender", "VRHeadset", "Duration", "MotionSickness", "ImmersionLevel"};

enum class TargetColumn { MotionSickness, ImmersionLevel };

std::string_view to_string(TargetColumn c) noexcept;
std::optional<TargetColumn> parse_target_column(std::string_view s) noexcept;

/// Binary target: label 1 iff the target column value >= threshold.
struct TargetSpec {
  TargetColumn column = TargetColumn::ImmersionLevel;
  int threshold = 4;

  int target_value(const RawRecord& r) const noexcept;
  int label_of(const RawRecord& r) const noexcept { return target_value(r) >= threshold ? 1 : 0; }

  friend bool operator==(const TargetSpec&, const TargetSpec&) = default;
};

/// Parses CSV text with the six-column header in any order. `source` names
/// the input in error messages. When `optional_column` is given, that column
/// may be absent; its field is then left at zero and `*present` reports it.
std::vector<RawRecord> read_records(std::istream& in, std::string_view source,
                                    std::optional<std::string_view> optional_column = std::nullopt,
                                    bool* present = nullptr);

std::vector<RawRecord> load_csv(const std::filesystem::path& path);

struct ScoringInput {
  std::vector<RawRecord> records;
  bool has_target = false;
};

/// Loader for inference input where the target column may be missing.
ScoringInput load_csv_for_scoring(const std::filesystem::path& path, TargetColumn target);

/// Writes the header in canonical order and one row per record. Durations
/// use the shortest decimal form that reads back to the same double.
std::string format_csv(std::span<const RawRecord> records);
void write_csv(const std::filesystem::path& path, std::span<const RawRecord> records);

/// Features: Age, Duration, the non-target score, then Gender one-hot
/// (Male, Female, Other) and VRHeadset one-hot (HTC Vive, Oculus Rift,
/// PlayStation VR). The first three are numeric and get standardized.
inline constexpr std::size_t kNumericFeatureCount = 3;
inline constexpr std::size_t kFeatureCount = 9;

std::vector<std::string> feature_names(const TargetSpec& spec);
Vector encode_features(const RawRecord& r, const TargetSpec& spec);

struct EncodeResult {
  std::vector<EncodedExample> examples;
  std::vector<std::string> warnings;
};

EncodeResult encode(std::span<const RawRecord> records, const TargetSpec& spec);

struct SplitDataset {
  std::vector<EncodedExample> train;
  std::vector<EncodedExample> test;
  std::vector<std::size_t> train_indices;  // positions in the input
  std::vector<std::size_t> test_indices;
  std::uint64_t seed = 0;
  double ratio = 0.7;
};

/// Seeded Fisher-Yates shuffle; the first round(ratio * n) go to train.
/// Stratified mode applies the same rule within each class.
SplitDataset split(std::span<const EncodedExample> examples, double ratio, std::uint64_t seed,
                   bool stratified = false);

/// Z-scoring of the leading numeric features with population stddev.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<bool> constant;  // passed through unscaled

  Vector apply(std::span<const double> features) const;
  friend bool operator==(const Standardizer&, const Standardizer&) = default;
};

Standardizer fit_standardizer(std::span<const EncodedExample> train,
                              std::size_t numeric_count = kNumericFeatureCount);
std::vector<EncodedExample> apply_standardizer(const Standardizer& s,
                                               std::span<const EncodedExample> examples);

/// Synthetic table with a planted signal. ImmersionLevel is 4-5 for the
/// positive class and 1-3 otherwise; the class is drawn from a logistic link
/// on motion sickness, duration and headset scaled by signal_strength.
std::vector<RawRecord> gen_synthetic(std::size_t n, std::uint64_t seed, double signal_strength);

/// P(ImmersionLevel >= 4 | features) under the generator's link.
double synthetic_link_probability(const RawRecord& r, double signal_strength);

/// Accuracy of the Bayes rule (predict positive iff link probability > 0.5)
/// on the realized labels of `records`.
double synthetic_oracle_accuracy(std::span<const RawRecord> records, double signal_strength);

}  // namespace lstmboost
