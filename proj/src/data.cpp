#include "lstmboost/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lstmboost/error.hpp"
#include "lstmboost/numerics.hpp"

namespace lstmboost {

std::string_view to_string(Gender g) noexcept {
  switch (g) {
    case Gender::Male: return "Male";
    case Gender::Female: return "Female";
    case Gender::Other: return "Other";
  }
  return "?";
}

std::string_view to_string(Headset h) noexcept {
  switch (h) {
    case Headset::HtcVive: return "HTC Vive";
    case Headset::OculusRift: return "Oculus Rift";
    case Headset::PlayStationVr: return "PlayStation VR";
  }
  return "?";
}

std::optional<Gender> parse_gender(std::string_view s) noexcept {
  for (Gender g : kGenders) {
    if (to_string(g) == s) return g;
  }
  return std::nullopt;
}

std::optional<Headset> parse_headset(std::string_view s) noexcept {
  for (Headset h : kHeadsets) {
    if (to_string(h) == s) return h;
  }
  return std::nullopt;
}

std::string_view to_string(TargetColumn c) noexcept {
  return c == TargetColumn::MotionSickness ? "MotionSickness" : "ImmersionLevel";
}

std::optional<TargetColumn> parse_target_column(std::string_view s) noexcept {
  if (s == "MotionSickness") return TargetColumn::MotionSickness;
  if (s == "ImmersionLevel") return TargetColumn::ImmersionLevel;
  return std::nullopt;
}

int TargetSpec::target_value(const RawRecord& r) const noexcept {
  return column == TargetColumn::MotionSickness ? r.motion_sickness : r.immersion_level;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void row_error(std::string_view source, std::size_t line, const std::string& what) {
  throw DataError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

int parse_int(std::string_view field, std::string_view column, std::string_view source,
              std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    row_error(source, line, "cannot parse " + std::string(column) + " value '" +
                                std::string(field) + "' as an integer");
  }
  return v;
}

double parse_real(std::string_view field, std::string_view column, std::string_view source,
                  std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty() ||
      !std::isfinite(v)) {
    row_error(source, line, "cannot parse " + std::string(column) + " value '" +
                                std::string(field) + "' as a finite number");
  }
  return v;
}

}  // namespace

std::vector<RawRecord> read_records(std::istream& in, std::string_view source,
                                    std::optional<std::string_view> optional_column,
                                    bool* present) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    have_header = !trim(line).empty();
  }
  if (!have_header) throw DataError(std::string(source) + ": empty file");

  const auto header = split_fields(line);
  std::array<std::optional<std::size_t>, kCsvColumns.size()> index;
  for (std::size_t k = 0; k < header.size(); ++k) {
    const auto it = std::ranges::find(kCsvColumns, header[k]);
    if (it == kCsvColumns.end()) {
      throw DataError(std::string(source) + ": unexpected column '" + std::string(header[k]) + "'");
    }
    auto& slot = index[static_cast<std::size_t>(it - kCsvColumns.begin())];
    if (slot) throw DataError(std::string(source) + ": duplicate column '" + std::string(*it) + "'");
    slot = k;
  }
  bool optional_present = true;
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
    if (index[c]) continue;
    if (optional_column && *optional_column == kCsvColumns[c]) {
      optional_present = false;
      continue;
    }
    throw DataError(std::string(source) + ": missing column '" + std::string(kCsvColumns[c]) + "'");
  }
  if (present) *present = optional_present;

  std::vector<RawRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      row_error(source, line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                     std::to_string(fields.size()));
    }
    auto field = [&](std::size_t c) { return fields[*index[c]]; };
    RawRecord r;
    r.age = parse_int(field(0), kCsvColumns[0], source, line_no);
    if (r.age < 0) row_error(source, line_no, "Age must be non-negative");
    const auto gender = parse_gender(field(1));
    if (!gender) row_error(source, line_no, "unknown Gender '" + std::string(field(1)) + "'");
    r.gender = *gender;
    const auto headset = parse_headset(field(2));
    if (!headset) row_error(source, line_no, "unknown VRHeadset '" + std::string(field(2)) + "'");
    r.headset = *headset;
    r.duration = parse_real(field(3), kCsvColumns[3], source, line_no);
    if (r.duration < 0.0) row_error(source, line_no, "Duration must be non-negative");
    if (index[4]) r.motion_sickness = parse_int(field(4), kCsvColumns[4], source, line_no);
    if (index[5]) r.immersion_level = parse_int(field(5), kCsvColumns[5], source, line_no);
    records.push_back(r);
  }
  if (records.empty()) throw DataError(std::string(source) + ": no data rows");
  return records;
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace

std::vector<RawRecord> load_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_records(in, path.string());
}

ScoringInput load_csv_for_scoring(const std::filesystem::path& path, TargetColumn target) {
  auto in = open_input(path);
  ScoringInput out;
  out.records = read_records(in, path.string(), to_string(target), &out.has_target);
  return out;
}

std::string format_csv(std::span<const RawRecord> records) {
  std::string out;
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
    if (c) out += ',';
    out += kCsvColumns[c];
  }
  out += '\n';
  char buf[64];
  for (const auto& r : records) {
    out += std::to_string(r.age);
    out += ',';
    out += to_string(r.gender);
    out += ',';
    out += to_string(r.headset);
    out += ',';
    const auto res = std::to_chars(buf, buf + sizeof buf, r.duration);
    out.append(buf, res.ptr);
    out += ',';
    out += std::to_string(r.motion_sickness);
    out += ',';
    out += std::to_string(r.immersion_level);
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, std::span<const RawRecord> records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << format_csv(records);
  if (!out.flush()) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::string> feature_names(const TargetSpec& spec) {
  std::vector<std::string> names = {"Age", "Duration"};
  names.emplace_back(spec.column == TargetColumn::ImmersionLevel ? "MotionSickness"
                                                                  : "ImmersionLevel");
  for (Gender g : kGenders) names.push_back("Gender=" + std::string(to_string(g)));
  for (Headset h : kHeadsets) names.push_back("VRHeadset=" + std::string(to_string(h)));
  return names;
}

Vector encode_features(const RawRecord& r, const TargetSpec& spec) {
  Vector x;
  x.reserve(kFeatureCount);
  x.push_back(static_cast<double>(r.age));
  x.push_back(r.duration);
  x.push_back(static_cast<double>(spec.column == TargetColumn::ImmersionLevel ? r.motion_sickness
                                                                              : r.immersion_level));
  for (Gender g : kGenders) x.push_back(r.gender == g ? 1.0 : 0.0);
  for (Headset h : kHeadsets) x.push_back(r.headset == h ? 1.0 : 0.0);
  return x;
}

EncodeResult encode(std::span<const RawRecord> records, const TargetSpec& spec) {
  if (records.empty()) throw ArgumentError("encode: no records");
  EncodeResult out;
  out.examples.reserve(records.size());
  std::size_t positives = 0;
  int lo = spec.target_value(records.front());
  int hi = lo;
  for (const auto& r : records) {
    out.examples.push_back({encode_features(r, spec), spec.label_of(r)});
    positives += static_cast<std::size_t>(out.examples.back().label);
    lo = std::min(lo, spec.target_value(r));
    hi = std::max(hi, spec.target_value(r));
  }
  if (spec.threshold <= lo || spec.threshold > hi) {
    out.warnings.push_back("threshold " + std::to_string(spec.threshold) + " lies outside the " +
                           std::string(to_string(spec.column)) + " range (" + std::to_string(lo) +
                           ".." + std::to_string(hi) + ")");
  }
  if (positives == 0 || positives == records.size()) {
    out.warnings.push_back("all " + std::to_string(records.size()) + " records have label " +
                           std::to_string(positives == 0 ? 0 : 1));
  }
  return out;
}

namespace {

void shuffle(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t k = idx.size(); k > 1; --k) std::swap(idx[k - 1], idx[rng.below(k)]);
}

std::size_t train_count(double ratio, std::size_t n) {
  return static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
}

}  // namespace

SplitDataset split(std::span<const EncodedExample> examples, double ratio, std::uint64_t seed,
                   bool stratified) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw ArgumentError("split: ratio must lie in (0, 1)");
  if (examples.size() < 2) throw ArgumentError("split: need at least two examples");
  Rng rng(seed);
  SplitDataset out;
  out.seed = seed;
  out.ratio = ratio;

  auto take = [&](std::vector<std::size_t> idx) {
    shuffle(idx, rng);
    const std::size_t k = train_count(ratio, idx.size());
    out.train_indices.insert(out.train_indices.end(), idx.begin(), idx.begin() + k);
    out.test_indices.insert(out.test_indices.end(), idx.begin() + k, idx.end());
  };
  if (stratified) {
    std::vector<std::size_t> neg, pos;
    for (std::size_t i = 0; i < examples.size(); ++i) (examples[i].label == 1 ? pos : neg).push_back(i);
    take(std::move(neg));
    take(std::move(pos));
  } else {
    std::vector<std::size_t> idx(examples.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    take(std::move(idx));
  }
  for (auto i : out.train_indices) out.train.push_back(examples[i]);
  for (auto i : out.test_indices) out.test.push_back(examples[i]);
  return out;
}

Vector Standardizer::apply(std::span<const double> features) const {
  if (features.size() < mean.size()) {
    throw DataError("standardizer: feature vector shorter than the fitted numeric block");
  }
  Vector out(features.begin(), features.end());
  for (std::size_t j = 0; j < mean.size(); ++j) {
    if (!constant[j]) out[j] = (out[j] - mean[j]) / stddev[j];
  }
  return out;
}

Standardizer fit_standardizer(std::span<const EncodedExample> train, std::size_t numeric_count) {
  if (train.empty()) throw ArgumentError("fit_standardizer: empty training set");
  const auto n = static_cast<double>(train.size());
  Standardizer s;
  s.mean.assign(numeric_count, 0.0);
  s.stddev.assign(numeric_count, 0.0);
  s.constant.assign(numeric_count, false);
  for (std::size_t j = 0; j < numeric_count; ++j) {
    double sum = 0.0;
    for (const auto& ex : train) sum += ex.features.at(j);
    const double mu = sum / n;
    double ss = 0.0;
    for (const auto& ex : train) ss += (ex.features[j] - mu) * (ex.features[j] - mu);
    s.mean[j] = mu;
    s.stddev[j] = std::sqrt(ss / n);
    s.constant[j] = !(s.stddev[j] > 0.0);
  }
  return s;
}

std::vector<EncodedExample> apply_standardizer(const Standardizer& s,
                                               std::span<const EncodedExample> examples) {
  std::vector<EncodedExample> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) out.push_back({s.apply(ex.features), ex.label});
  return out;
}

namespace {

constexpr std::array<double, 3> kHeadsetEffect = {0.4, 0.0, -0.4};

double synthetic_logit(int motion_sickness, double duration, Headset headset) {
  // Centered and scaled by the uniform ranges' mean and stddev.
  const double ms = (motion_sickness - 5.5) / 2.8723;
  const double dur = (duration - 32.5) / 15.877;
  return -1.0 * ms + 0.6 * dur + kHeadsetEffect[static_cast<std::size_t>(headset)];
}

}  // namespace

double synthetic_link_probability(const RawRecord& r, double signal_strength) {
  return sigmoid(signal_strength * synthetic_logit(r.motion_sickness, r.duration, r.headset));
}

std::vector<RawRecord> gen_synthetic(std::size_t n, std::uint64_t seed, double signal_strength) {
  if (n == 0) throw ArgumentError("gen_synthetic: n must be at least 1");
  if (!(signal_strength >= 0.0) || !std::isfinite(signal_strength)) {
    throw ArgumentError("gen_synthetic: signal strength must be finite and non-negative");
  }
  Rng rng(seed);
  std::vector<RawRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RawRecord r;
    r.age = 18 + static_cast<int>(rng.below(43));
    r.gender = kGenders[rng.below(3)];
    r.headset = kHeadsets[rng.below(3)];
    r.duration = std::round(rng.uniform(5.0, 60.0) * 1e8) / 1e8;
    r.motion_sickness = 1 + static_cast<int>(rng.below(10));
    const bool positive = rng.next_unit() < synthetic_link_probability(r, signal_strength);
    r.immersion_level = positive ? 4 + static_cast<int>(rng.below(2)) : 1 + static_cast<int>(rng.below(3));
    out.push_back(r);
  }
  return out;
}

double synthetic_oracle_accuracy(std::span<const RawRecord> records, double signal_strength) {
  if (records.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& r : records) {
    const bool predicted = synthetic_link_probability(r, signal_strength) > 0.5;
    const bool actual = r.immersion_level >= 4;
    hits += predicted == actual ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

}  // namespace lstmboost
