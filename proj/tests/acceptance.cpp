// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

#include "lstmboost/boosting.hpp"
#include "lstmboost/data.hpp"
#include "lstmboost/lstm.hpp"
#include "lstmboost/lstm_learner.hpp"
#include "lstmboost/metrics.hpp"
#include "lstmboost/model_io.hpp"
#include "lstmboost/pipeline.hpp"
#include "oracles/stump_boost_oracle.hpp"

namespace fs = std::filesystem;
using namespace lstmboost;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lstmboost_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// The default run on gen_synthetic(500, signal 4) is shared by criteria 5, 6 and 9.
const TrainArtifacts& default_run() {
  static const TrainArtifacts artifacts = train_pipeline(RunConfig{});
  return artifacts;
}

Outcome metric_arithmetic() {
  // Confusion matrices whose precision and recall are exactly the target pairs.
  const MetricReport a = scores({.tp = 154, .fp = 21, .fn = 46, .tn = 0});
  const MetricReport b = scores({.tp = 1653, .fp = 247, .fn = 1247, .tn = 0});
  const double fa = f1_score(0.88, 0.77);
  const double fb = f1_score(0.87, 0.57);
  const ConfusionMatrix train_cm{.tp = 100, .fp = 30, .fn = 22, .tn = 77};
  const ConfusionMatrix test_cm{.tp = 90, .fp = 28, .fn = 25, .tn = 77};
  const auto ci_train = correct_incorrect(train_cm);
  const auto ci_test = correct_incorrect(test_cm);
  const double acc_train = scores(train_cm).accuracy;
  const double acc_test = scores(test_cm).accuracy;

  const bool pass = std::abs(a.precision - 0.88) < 1e-12 && std::abs(a.recall - 0.77) < 1e-12 &&
                    std::abs(b.precision - 0.87) < 1e-12 && std::abs(b.recall - 0.57) < 1e-12 &&
                    std::abs(a.f1 - 0.8213) <= 0.005 && std::abs(b.f1 - 0.6888) <= 0.005 &&
                    std::abs(fa - a.f1) < 1e-12 && std::abs(fb - b.f1) < 1e-12 &&
                    ci_train.correct == 177 && ci_train.incorrect == 52 && ci_test.correct == 167 &&
                    ci_test.incorrect == 53 && std::abs(acc_train - 0.7729) < 5e-5 &&
                    std::abs(acc_test - 0.7591) < 5e-5;
  return {pass, fmt("f1 %.4f / %.4f, accuracy %.4f / %.4f", a.f1, b.f1, acc_train, acc_test)};
}

Outcome gradient_oracle() {
  const GradcheckSummary healthy = cmd_gradcheck(1);
  double weakest_mutation = 1e300;
  for (Gate g : kAllGates) {
    weakest_mutation = std::min(weakest_mutation, cmd_gradcheck(1, g).max_error);
  }
  const bool pass = healthy.passed && healthy.max_error < 1e-4 && healthy.cases.size() == 10 &&
                    weakest_mutation > 1e-2;
  return {pass, fmt("max error %.3g over %zu cases; weakest gate mutation %.3g", healthy.max_error,
                    healthy.cases.size(), weakest_mutation)};
}

struct Fixture {
  std::vector<double> x;
  std::vector<int> y;
};

std::vector<Fixture> boosting_fixtures() {
  std::vector<Fixture> out = {
      {{1, 2, 3, 4, 5, 6, 7, 8}, {1, 1, 0, 0, 1, 1, 0, 1}},
      {{0.5, 1.5, 2.5}, {0, 1, 0}},
      {{1, 2}, {0, 1}},
      {{1, 1, 2, 2, 3, 3}, {0, 1, 1, 0, 1, 1}},
      {{3, 1, 4, 1, 5, 9, 2, 6, 5, 3}, {1, 0, 1, 0, 0, 1, 1, 0, 1, 0}},
      {{-2, -1, 0, 1, 2}, {1, 1, 0, 1, 1}},
      {{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}, {0, 1, 0, 1, 0, 1, 0, 1, 0, 1}},
      {{7, 7, 7, 8}, {1, 0, 1, 0}},
  };
  Rng rng(2024);
  while (out.size() < 208) {
    const std::size_t n = 2 + rng.below(9);
    Fixture f;
    const bool coarse = rng.below(2) == 0;  // repeated values exercise tied thresholds
    for (std::size_t i = 0; i < n; ++i) {
      f.x.push_back(coarse ? static_cast<double>(rng.below(4)) : rng.uniform(-3.0, 3.0));
      f.y.push_back(static_cast<int>(rng.below(2)));
    }
    const bool both = std::ranges::count(f.y, 1) > 0 && std::ranges::count(f.y, 0) > 0;
    if (both) out.push_back(std::move(f));
  }
  return out;
}

Outcome adaboost_exactness() {
  const auto fixtures = boosting_fixtures();
  std::size_t rounds_checked = 0;
  std::size_t all_rejected = 0;
  double worst_neutrality = 0.0;
  for (const auto& f : fixtures) {
    std::vector<EncodedExample> ex;
    for (std::size_t i = 0; i < f.x.size(); ++i) ex.push_back({{f.x[i]}, f.y[i]});
    BoostConfig cfg;
    cfg.rounds = 3;
    const auto ref = oracle::boost(f.x, f.y, 3);
    BoostResult<Stump> result;
    try {
      result = boost_train(ex, cfg, StumpTrainer{});
    } catch (const TrainingError&) {
      // Every attempt at chance: the oracle must reject all rounds too.
      if (std::ranges::any_of(ref, [](const oracle::Round& r) { return r.accepted; })) {
        return {false, fmt("library found no learner on a %zu-point fixture", f.x.size())};
      }
      ++all_rejected;
      continue;
    }
    if (result.log.size() != ref.size()) return {false, "round count differs from oracle"};

    std::size_t accepted = 0;
    for (std::size_t t = 0; t < ref.size(); ++t) {
      const RoundLog& got = result.log[t];
      if (got.epsilon != ref[t].epsilon || got.alpha != ref[t].alpha ||
          got.weights_after != ref[t].weights || got.accepted != ref[t].accepted) {
        return {false, fmt("mismatch in round %zu of a %zu-point fixture", t + 1, f.x.size())};
      }
      ++rounds_checked;
      if (!got.accepted) continue;
      const Stump& s = result.ensemble.rounds[accepted++].learner;
      if (s.threshold != ref[t].threshold || s.polarity != ref[t].polarity) {
        return {false, "stump differs from oracle"};
      }
      if (got.early_stop) continue;
      double err = 0.0;
      for (std::size_t i = 0; i < ex.size(); ++i) {
        if ((s.predict(ex[i].features) > 0 ? 1 : 0) != ex[i].label) err += got.weights_after[i];
      }
      worst_neutrality = std::max(worst_neutrality, std::abs(err - 0.5));
    }
  }
  return {worst_neutrality <= 1e-10,
          fmt("%zu fixtures, %zu rounds bit-identical, %zu all-chance fixtures agreed; "
              "neutrality deviation %.2g",
              fixtures.size(), rounds_checked, all_rejected, worst_neutrality)};
}

struct Prepared {
  std::vector<EncodedExample> train;
};

Prepared prepare(std::size_t n, std::uint64_t seed, double signal) {
  const auto records = gen_synthetic(n, seed, signal);
  const auto encoded = encode(records, TargetSpec{}).examples;
  const auto parts = split(encoded, 0.7, seed);
  const auto standardizer = fit_standardizer(parts.train);
  return {apply_standardizer(standardizer, parts.train)};
}

Outcome error_bound() {
  double tightest = 1e300;
  std::size_t runs = 0;
  std::string failure;
  const auto check = [&](const auto& result, const std::vector<EncodedExample>& train,
                         const char* kind, std::uint64_t seed) {
    const double err = staged_train_error(result.ensemble, train).back();
    const double bound = training_error_bound(result.log);
    tightest = std::min(tightest, bound - err);
    ++runs;
    if (err > bound + 1e-12 && failure.empty()) {
      failure = fmt("%s run seed %llu: error %.4f > bound %.4f", kind,
                    static_cast<unsigned long long>(seed), err, bound);
    }
  };
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto data = prepare(200, seed, seed % 2 ? 4.0 : 1.0);
    BoostConfig cfg;
    cfg.rounds = 10;
    cfg.seed = seed;
    check(boost_train(data.train, cfg, StumpTrainer{}), data.train, "stump", seed);
  }
  for (std::uint64_t seed = 11; seed <= 20; ++seed) {
    const auto data = prepare(150, seed, seed % 2 ? 4.0 : 1.0);
    BoostConfig cfg;
    cfg.rounds = 5;
    cfg.seed = seed;
    LstmTrainer trainer;
    trainer.config.max_epochs = 8;
    trainer.config.hidden_dim = 6;
    check(boost_train(data.train, cfg, trainer), data.train, "lstm", seed);
  }
  if (!failure.empty()) return {false, failure};
  return {true, fmt("%zu runs; smallest slack %.4f", runs, tightest)};
}

Outcome loss_decrease() {
  const LossCurve& curve = default_run().curves.front().curve;
  const double first = curve.epoch_loss.front();
  const double last = curve.epoch_loss.back();
  const double ratio = last / first;
  return {curve.epoch_loss.size() == 50 && ratio <= 0.75,
          fmt("first learner loss %.4f -> %.4f, ratio %.3f", first, last, ratio)};
}

Outcome learning_signal() {
  const TrainArtifacts& a = default_run();
  const double lift = a.test_report.accuracy - a.majority_rate;
  double worst_rise = 0.0;
  for (std::size_t k = 1; k < a.staged_train_error.size(); ++k) {
    worst_rise = std::max(worst_rise, a.staged_train_error[k] - a.staged_train_error[k - 1]);
  }
  const bool pass = a.boost_log.size() == 10 && lift >= 0.10 && worst_rise <= 0.02 + 1e-12;
  return {pass, fmt("test accuracy %.4f vs majority %.4f (lift %.4f); largest staged rise %.4f",
                    a.test_report.accuracy, a.majority_rate, lift, worst_rise)};
}

Outcome null_signal() {
  RunConfig cfg;
  cfg.synthetic_n = 1000;
  cfg.signal_strength = 0.0;
  const TrainArtifacts a = train_pipeline(cfg);
  const double gap = a.test_report.accuracy - a.majority_rate;
  return {std::abs(gap) <= 0.07, fmt("test accuracy %.4f vs majority %.4f (gap %+.4f)",
                                     a.test_report.accuracy, a.majority_rate, gap)};
}

Outcome determinism() {
  const fs::path a = scratch_dir("run_a");
  const fs::path b = scratch_dir("run_b");
  RunConfig cfg;
  cfg.out_dir = a;
  const TrainArtifacts first = cmd_train(cfg);
  cfg.out_dir = b;
  cmd_train(cfg);
  const bool model_same = slurp(a / "model.json") == slurp(b / "model.json");
  const bool report_same = slurp(a / "report.json") == slurp(b / "report.json");

  const Model loaded = load_model(b / "model.json");
  const auto records = gen_synthetic(100, 777, 4.0);
  std::size_t exact = 0;
  for (const auto& r : records) {
    const Prediction mem = first.model.predict(r);
    const Prediction disk = loaded.predict(r);
    if (mem.label == disk.label && mem.margin == disk.margin) ++exact;
  }
  return {model_same && report_same && exact == records.size(),
          fmt("model.json %s, report.json %s, %zu/%zu predictions identical after reload",
              model_same ? "identical" : "differs", report_same ? "identical" : "differs", exact,
              records.size())};
}

Outcome schedule() {
  const LossCurve& curve = default_run().curves.front().curve;
  if (curve.learning_rates.size() != 50) return {false, "expected 50 logged learning rates"};
  std::size_t exact = 0;
  for (std::size_t e = 1; e <= 50; ++e) {
    const double expected = 0.01 * std::pow(0.1, static_cast<double>((e - 1) / 10));
    if (curve.learning_rates[e - 1] == expected) ++exact;
  }
  return {exact == 50, fmt("%zu/50 epochs match", exact)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "metric arithmetic", metric_arithmetic},
      {2, "gradient oracle", gradient_oracle},
      {3, "adaboost exactness", adaboost_exactness},
      {4, "training error bound", error_bound},
      {5, "first learner loss decrease", loss_decrease},
      {6, "learning signal", learning_signal},
      {7, "null signal", null_signal},
      {8, "determinism and round trip", determinism},
      {9, "learning rate schedule", schedule},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
