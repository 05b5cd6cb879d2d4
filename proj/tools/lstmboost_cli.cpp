// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lstmboost/lstmboost.h"

namespace {

int fail(lb_status st) {
  std::fprintf(stderr, "error: %s\n", lb_last_error());
  return static_cast<int>(st);
}

void print_message(const char* msg, void*) { std::fprintf(stderr, "%s\n", msg); }

struct ModelHandle {
  lb_model* ptr = nullptr;
  ~ModelHandle() { lb_model_destroy(ptr); }
};

struct ConfigHandle {
  lb_config* ptr = nullptr;
  ~ConfigHandle() { lb_config_destroy(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boosted LSTM classifier for VR user-experience data"};
  app.require_subcommand(1);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Write a synthetic dataset with a planted signal");
  std::size_t gen_n = 500;
  std::uint64_t gen_seed = 42;
  double gen_signal = 4.0;
  std::string gen_out = "data.csv";
  gen->add_option("-n,--n", gen_n, "Number of rows")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--signal", gen_signal, "Signal strength (0 = labels independent of features)")
      ->capture_default_str();
  gen->add_option("-o,--out", gen_out, "Output CSV path")->capture_default_str();

  // train: every value is forwarded verbatim to lb_config_set under its key.
  auto* train = app.add_subcommand("train", "Split, train the boosted ensemble and evaluate");
  std::string config_path;
  train->add_option("--config", config_path, "key = value settings file (flags override it)");
  const std::vector<std::pair<std::string, std::string>> train_keys = {
      {"data", "Input CSV (synthetic data when omitted)"},
      {"synthetic-n", "Rows of synthetic data [500]"},
      {"signal", "Synthetic signal strength [4.0]"},
      {"target", "Target column: ImmersionLevel or MotionSickness [ImmersionLevel]"},
      {"threshold", "Label 1 iff target >= threshold [4]"},
      {"ratio", "Training fraction of the split [0.7]"},
      {"stratified", "Stratify the split by class [false]"},
      {"epochs", "Epochs per weak learner [50]"},
      {"lr", "Initial learning rate [0.01]"},
      {"lr-drop-factor", "Learning-rate drop factor [0.1]"},
      {"lr-drop-period", "Epochs between drops [10]"},
      {"grad-clip", "Per-update gradient L2 clip [1.0]"},
      {"hidden", "LSTM hidden units [16]"},
      {"rounds", "Boosting rounds [10]"},
      {"epsilon-floor", "Clamp for the weighted error [1e-10]"},
      {"sequence-mode", "single or unrolled [single]"},
      {"seed", "Seed for split, data and training [42]"},
      {"out-dir", "Output directory [.]"},
  };
  std::map<std::string, std::string> train_values;
  std::map<std::string, CLI::Option*> train_opts;
  for (const auto& [key, help] : train_keys) {
    train_opts[key] = train->add_option("--" + key, train_values[key], help);
  }

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Score a labelled CSV with a saved model");
  std::string eval_model, eval_data, eval_out_dir = ".", eval_report;
  eval->add_option("--model", eval_model, "model.json")->required();
  eval->add_option("--data", eval_data, "Labelled CSV")->required();
  eval->add_option("--out-dir", eval_out_dir, "Directory for evaluation.json")->capture_default_str();
  eval->add_option("--report", eval_report, "Explicit report path (overrides --out-dir)");

  // predict
  auto* pred = app.add_subcommand("predict", "Write ensemble margins and labels for a CSV");
  std::string pred_model, pred_data, pred_out_dir = ".", pred_out;
  pred->add_option("--model", pred_model, "model.json")->required();
  pred->add_option("--data", pred_data, "CSV; the target column may be absent")->required();
  pred->add_option("--out-dir", pred_out_dir, "Directory for predictions.csv")->capture_default_str();
  pred->add_option("-o,--out", pred_out, "Explicit output path (overrides --out-dir)");

  // gradcheck
  auto* grad = app.add_subcommand("gradcheck", "Finite-difference check of the LSTM gradients");
  std::uint64_t grad_seed = 1;
  std::string mutate_gate;
  grad->add_option("--seed", grad_seed, "First of ten instance seeds")->capture_default_str();
  grad->add_option("--mutate-gate", mutate_gate,
                   "Zero one gate's analytic gradient (forget|input|output|candidate)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return LB_ERR_ARGUMENT;
  }

  if (*gen) {
    double oracle = 0.0;
    if (const auto st = lb_gen_data(gen_n, gen_seed, gen_signal, gen_out.c_str(), &oracle)) return fail(st);
    std::printf("wrote %zu rows to %s\n", gen_n, gen_out.c_str());
    std::printf("oracle accuracy of the generative link: %.6f\n", oracle);
    return 0;
  }

  if (*train) {
    ConfigHandle cfg;
    if (const auto st = lb_config_create(&cfg.ptr)) return fail(st);
    if (!config_path.empty()) {
      if (const auto st = lb_config_load_file(cfg.ptr, config_path.c_str())) return fail(st);
    }
    for (const auto& [key, help] : train_keys) {
      if (train_opts[key]->count() == 0) continue;
      if (const auto st = lb_config_set(cfg.ptr, key.c_str(), train_values[key].c_str())) return fail(st);
    }
    lb_set_message_handler(print_message, nullptr);
    lb_train_summary s{};
    if (const auto st = lb_train(cfg.ptr, nullptr, &s)) return fail(st);
    std::printf("rounds accepted: %zu of %zu\n", s.rounds_accepted, s.rounds_attempted);
    std::printf("train accuracy: %.4f\n", s.train_accuracy);
    std::printf("test accuracy:  %.4f (majority baseline %.4f%s)\n", s.test_accuracy,
                s.majority_rate, s.near_chance ? ", near chance" : "");
    if (s.oracle_accuracy >= 0.0) std::printf("oracle accuracy: %.4f\n", s.oracle_accuracy);
    return 0;
  }

  if (*eval) {
    ModelHandle model;
    if (const auto st = lb_model_load(eval_model.c_str(), &model.ptr)) return fail(st);
    const std::string report =
        eval_report.empty() ? (std::filesystem::path(eval_out_dir) / "evaluation.json").string() : eval_report;
    double acc = 0.0;
    if (const auto st = lb_evaluate(model.ptr, eval_data.c_str(), report.c_str(), &acc)) return fail(st);
    std::printf("accuracy: %.4f (report: %s)\n", acc, report.c_str());
    return 0;
  }

  if (*pred) {
    ModelHandle model;
    if (const auto st = lb_model_load(pred_model.c_str(), &model.ptr)) return fail(st);
    const std::string out =
        pred_out.empty() ? (std::filesystem::path(pred_out_dir) / "predictions.csv").string() : pred_out;
    if (const auto st = lb_predict_file(model.ptr, pred_data.c_str(), out.c_str())) return fail(st);
    std::printf("wrote %s\n", out.c_str());
    return 0;
  }

  if (*grad) {
    double max_error = 0.0;
    int passed = 0;
    const char* gate = mutate_gate.empty() ? nullptr : mutate_gate.c_str();
    if (const auto st = lb_gradcheck(grad_seed, gate, &max_error, &passed)) return fail(st);
    std::printf("max relative error: %.6e (tolerance 1e-04): %s\n", max_error, passed ? "PASS" : "FAIL");
    return passed ? 0 : 1;
  }
  return 0;
}
