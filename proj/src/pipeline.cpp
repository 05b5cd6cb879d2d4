#include "lstmboost/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lstmboost/error.hpp"
#include "lstmboost/lstm_learner.hpp"

namespace lstmboost {

using ojson = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ArgumentError("invalid value '" + std::string(value) + "' for '" + std::string(key) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ArgumentError("invalid value '" + std::string(value) + "' for '" + std::string(key) + "'");
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out.flush()) throw IoError("failed writing '" + path.string() + "'");
}

ojson metric_json(const MetricReport& r) {
  const auto ci = correct_incorrect(r.counts);
  return ojson{{"split", r.split},
               {"n", r.counts.total()},
               {"accuracy", r.accuracy},
               {"precision", r.precision},
               {"recall", r.recall},
               {"f1", r.f1},
               {"tp", r.counts.tp},
               {"fp", r.counts.fp},
               {"fn", r.counts.fn},
               {"tn", r.counts.tn},
               {"correct", ci.correct},
               {"incorrect", ci.incorrect},
               {"degenerate",
                {{"precision", r.precision_degenerate},
                 {"recall", r.recall_degenerate},
                 {"f1", r.f1_degenerate}}}};
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "data") {
    data_path = std::filesystem::path(std::string(value));
  } else if (key == "synthetic-n") {
    synthetic_n = parse_number<std::size_t>(key, value);
    data_path.reset();
  } else if (key == "signal") {
    signal_strength = parse_number<double>(key, value);
  } else if (key == "target") {
    const auto c = parse_target_column(value);
    if (!c) throw ArgumentError("unknown target column '" + std::string(value) + "'");
    target.column = *c;
  } else if (key == "threshold") {
    target.threshold = parse_number<int>(key, value);
  } else if (key == "ratio") {
    split_ratio = parse_number<double>(key, value);
  } else if (key == "stratified") {
    stratified = parse_bool(key, value);
  } else if (key == "epochs") {
    train.max_epochs = parse_number<std::size_t>(key, value);
  } else if (key == "lr") {
    train.initial_lr = parse_number<double>(key, value);
  } else if (key == "lr-drop-factor") {
    train.lr_drop_factor = parse_number<double>(key, value);
  } else if (key == "lr-drop-period") {
    train.lr_drop_period = parse_number<std::size_t>(key, value);
  } else if (key == "grad-clip") {
    train.grad_clip = parse_number<double>(key, value);
  } else if (key == "hidden") {
    train.hidden_dim = parse_number<std::size_t>(key, value);
  } else if (key == "rounds") {
    boost.rounds = parse_number<std::size_t>(key, value);
  } else if (key == "epsilon-floor") {
    boost.epsilon_floor = parse_number<double>(key, value);
  } else if (key == "sequence-mode") {
    const auto m = parse_sequence_mode(value);
    if (!m) throw ArgumentError("unknown sequence mode '" + std::string(value) + "'");
    mode = *m;
  } else if (key == "out-dir") {
    out_dir = std::filesystem::path(std::string(value));
  } else {
    throw ArgumentError("unknown setting '" + std::string(key) + "'");
  }
}

void RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    s = trim(s.substr(0, s.find('#')));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw ArgumentError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    set(s.substr(0, eq), s.substr(eq + 1));
  }
}

MetricReport evaluate_records(const Model& m, std::span<const RawRecord> records,
                              std::string split_name) {
  std::vector<int> preds;
  std::vector<int> truths;
  preds.reserve(records.size());
  truths.reserve(records.size());
  for (const auto& r : records) {
    preds.push_back(m.predict(r).label);
    truths.push_back(m.target.label_of(r));
  }
  return scores(confusion(preds, truths), std::move(split_name));
}

TrainArtifacts train_pipeline(const RunConfig& cfg, const MessageSink& log) {
  auto say = [&](std::string_view msg) {
    if (log) log(msg);
  };
  cfg.train.validate();
  cfg.boost.validate();

  TrainArtifacts a;
  if (cfg.data_path) {
    a.records = load_csv(*cfg.data_path);
  } else {
    a.records = gen_synthetic(cfg.synthetic_n, cfg.seed, cfg.signal_strength);
    a.oracle_accuracy = synthetic_oracle_accuracy(a.records, cfg.signal_strength);
  }

  EncodeResult enc = encode(a.records, cfg.target);
  for (auto& w : enc.warnings) {
    say("warning: " + w);
    a.warnings.push_back(std::move(w));
  }
  a.split = split(enc.examples, cfg.split_ratio, cfg.seed, cfg.stratified);
  if (a.split.train.empty() || a.split.test.empty()) {
    throw DataError("split ratio leaves the training or test set empty");
  }

  Model& model = a.model;
  model.target = cfg.target;
  model.mode = cfg.mode;
  model.standardizer = fit_standardizer(a.split.train);
  const auto train_std = apply_standardizer(model.standardizer, a.split.train);

  BoostConfig boost = cfg.boost;
  boost.seed = cfg.seed;
  const LstmTrainer trainer{cfg.train, cfg.mode};
  auto result = boost_train(train_std, boost, trainer,
                            [&](const RoundLog& entry, const LstmLearner& learner) {
                              a.curves.push_back({entry.round, learner.curve});
                              say("round " + std::to_string(entry.round) + ": epsilon " +
                                  shortest(entry.epsilon) +
                                  (entry.accepted ? ", alpha " + shortest(entry.alpha)
                                                  : ", rejected"));
                            });
  model.ensemble = std::move(result.ensemble);
  a.boost_log = std::move(result.log);
  a.staged_train_error = staged_train_error(model.ensemble, std::span<const EncodedExample>(train_std));

  std::vector<RawRecord> train_rows, test_rows;
  for (auto i : a.split.train_indices) train_rows.push_back(a.records[i]);
  for (auto i : a.split.test_indices) test_rows.push_back(a.records[i]);
  a.train_report = evaluate_records(model, train_rows, "train");
  a.test_report = evaluate_records(model, test_rows, "test");

  std::size_t pos = 0;
  for (const auto& ex : a.split.test) pos += static_cast<std::size_t>(ex.label);
  const std::size_t n_test = a.split.test.size();
  a.majority_rate = static_cast<double>(std::max(pos, n_test - pos)) / static_cast<double>(n_test);
  return a;
}

std::string format_metric_json(const MetricReport& r) { return metric_json(r).dump(2) + "\n"; }

std::string format_report_json(const TrainArtifacts& a, const RunConfig& cfg) {
  std::size_t accepted = 0;
  for (const auto& r : a.boost_log) accepted += r.accepted ? 1 : 0;
  ojson doc = {
      {"format", "lstmboost-report"},
      {"version", 1},
      {"target", {{"column", std::string(to_string(cfg.target.column))}, {"threshold", cfg.target.threshold}}},
      {"n_records", a.records.size()},
      {"split_ratio", cfg.split_ratio},
      {"seed", cfg.seed},
      {"rounds_attempted", a.boost_log.size()},
      {"rounds_accepted", accepted},
      {"staged_train_error", a.staged_train_error},
      {"majority_rate", a.majority_rate},
      // Test accuracy within 5 points of always guessing the majority class.
      {"near_chance", a.test_report.accuracy < a.majority_rate + 0.05},
  };
  if (a.oracle_accuracy) doc["oracle_accuracy"] = *a.oracle_accuracy;
  doc["train"] = metric_json(a.train_report);
  doc["test"] = metric_json(a.test_report);
  return doc.dump(2) + "\n";
}

void write_train_outputs(const TrainArtifacts& a, const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.out_dir.string() + "'");

  save_model(a.model, cfg.out_dir / "model.json");
  write_text(cfg.out_dir / "report.json", format_report_json(a, cfg));

  std::string curve = "round,epoch,loss\n";
  for (const auto& rc : a.curves) {
    for (std::size_t e = 0; e < rc.curve.epoch_loss.size(); ++e) {
      curve += std::to_string(rc.round) + "," + std::to_string(e + 1) + "," +
               shortest(rc.curve.epoch_loss[e]) + "\n";
    }
  }
  write_text(cfg.out_dir / "loss_curve.csv", curve);

  std::string boost_log = "round,epsilon,alpha\n";
  for (const auto& r : a.boost_log) {
    boost_log += std::to_string(r.round) + "," + shortest(r.epsilon) + "," + shortest(r.alpha) + "\n";
  }
  write_text(cfg.out_dir / "boost_log.csv", boost_log);

  std::vector<RawRecord> rows;
  for (auto i : a.split.train_indices) rows.push_back(a.records[i]);
  write_csv(cfg.out_dir / "train_split.csv", rows);
  rows.clear();
  for (auto i : a.split.test_indices) rows.push_back(a.records[i]);
  write_csv(cfg.out_dir / "test_split.csv", rows);
  if (!cfg.data_path) write_csv(cfg.out_dir / "data.csv", a.records);
}

TrainArtifacts cmd_train(const RunConfig& cfg, const MessageSink& log) {
  TrainArtifacts a = train_pipeline(cfg, log);
  write_train_outputs(a, cfg);
  return a;
}

double cmd_gen_data(std::size_t n, std::uint64_t seed, double signal_strength,
                    const std::filesystem::path& out_path) {
  const auto records = gen_synthetic(n, seed, signal_strength);
  write_csv(out_path, records);
  return synthetic_oracle_accuracy(records, signal_strength);
}

MetricReport cmd_evaluate(const Model& m, const std::filesystem::path& data_path,
                          const std::filesystem::path& report_path) {
  const ScoringInput input = load_csv_for_scoring(data_path, m.target.column);
  if (!input.has_target) {
    throw DataError("'" + data_path.string() + "' lacks the model's target column " +
                    std::string(to_string(m.target.column)));
  }
  MetricReport r = evaluate_records(m, input.records, data_path.stem().string());
  const ojson doc = {{"evaluation", metric_json(r)}};
  write_text(report_path, doc.dump(2) + "\n");
  return r;
}

std::vector<Prediction> cmd_predict(const Model& m, const std::filesystem::path& data_path,
                                    const std::filesystem::path& out_path) {
  const ScoringInput input = load_csv_for_scoring(data_path, m.target.column);
  std::vector<Prediction> preds;
  preds.reserve(input.records.size());
  std::string text = "row_index,margin,label\n";
  for (std::size_t i = 0; i < input.records.size(); ++i) {
    preds.push_back(m.predict(input.records[i]));
    text += std::to_string(i) + "," + shortest(preds.back().margin) + "," +
            std::to_string(preds.back().label) + "\n";
  }
  write_text(out_path, text);
  return preds;
}

GradcheckSummary cmd_gradcheck(std::uint64_t seed, std::optional<Gate> zeroed_gate) {
  GradcheckSummary summary;
  for (std::uint64_t k = 0; k < 10; ++k) {
    Rng rng(seed + k);
    GradcheckCase c;
    c.seed = seed + k;
    c.input_dim = 1 + rng.below(5);
    c.hidden_dim = 1 + rng.below(8);
    c.steps = 1 + rng.below(4);
    LstmParams p = init_params(c.input_dim, c.hidden_dim, rng);
    // Non-zero biases so every gate's bias gradient is exercised.
    for (auto& g : p.gates) {
      for (double& b : g.bias) b += rng.uniform(-0.5, 0.5);
    }
    p.head_bias = rng.uniform(-0.5, 0.5);
    Sequence seq(c.steps, Vector(c.input_dim));
    for (auto& x : seq) {
      for (double& v : x) v = rng.uniform(-1.0, 1.0);
    }
    const int label = static_cast<int>(rng.below(2));
    const double weight = rng.uniform(0.5, 2.0);
    c.max_error = grad_check(p, seq, label, weight, kGradcheckEps, zeroed_gate);
    summary.max_error = std::max(summary.max_error, c.max_error);
    summary.cases.push_back(c);
  }
  summary.passed = summary.max_error < kGradcheckTolerance;
  return summary;
}

}  // namespace lstmboost
