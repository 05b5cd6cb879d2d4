#include "lstmboost/lstmboost.h"

#include <exception>
#include <new>
#include <string>

#include "lstmboost/error.hpp"
#include "lstmboost/pipeline.hpp"

struct lb_config {
  lstmboost::RunConfig cfg;
};

struct lb_model {
  lstmboost::Model model;
};

namespace {

thread_local std::string g_last_error;
thread_local lb_message_fn g_message_fn = nullptr;
thread_local void* g_message_user = nullptr;

template <class F>
lb_status guarded(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return LB_OK;
  } catch (const lstmboost::Error& e) {
    g_last_error = e.what();
    return static_cast<lb_status>(static_cast<int>(e.kind()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LB_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw lstmboost::ArgumentError(std::string(what) + " must not be NULL");
}

lstmboost::MessageSink sink() {
  if (!g_message_fn) return {};
  return [fn = g_message_fn, user = g_message_user](std::string_view msg) {
    const std::string s(msg);
    fn(s.c_str(), user);
  };
}

}  // namespace

extern "C" {

const char* lb_version(void) { return "1.0.0"; }

const char* lb_last_error(void) { return g_last_error.c_str(); }

void lb_set_message_handler(lb_message_fn fn, void* user) {
  g_message_fn = fn;
  g_message_user = user;
}

lb_status lb_config_create(lb_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new lb_config{};
  });
}

void lb_config_destroy(lb_config* cfg) { delete cfg; }

lb_status lb_config_set(lb_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg, "cfg");
    require(key, "key");
    require(value, "value");
    cfg->cfg.set(key, value);
  });
}

lb_status lb_config_load_file(lb_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg, "cfg");
    require(path, "path");
    cfg->cfg.load_file(path);
  });
}

lb_status lb_gen_data(size_t n, uint64_t seed, double signal_strength, const char* out_path,
                      double* oracle_accuracy) {
  return guarded([&] {
    require(out_path, "out_path");
    const double acc = lstmboost::cmd_gen_data(n, seed, signal_strength, out_path);
    if (oracle_accuracy) *oracle_accuracy = acc;
  });
}

lb_status lb_train(const lb_config* cfg, lb_model** out_model, lb_train_summary* summary) {
  return guarded([&] {
    require(cfg, "cfg");
    auto a = lstmboost::cmd_train(cfg->cfg, sink());
    if (summary) {
      summary->train_accuracy = a.train_report.accuracy;
      summary->test_accuracy = a.test_report.accuracy;
      summary->majority_rate = a.majority_rate;
      summary->oracle_accuracy = a.oracle_accuracy.value_or(-1.0);
      summary->rounds_attempted = a.boost_log.size();
      summary->rounds_accepted = a.model.ensemble.rounds.size();
      summary->near_chance = a.test_report.accuracy < a.majority_rate + 0.05 ? 1 : 0;
    }
    if (out_model) *out_model = new lb_model{std::move(a.model)};
  });
}

lb_status lb_model_load(const char* path, lb_model** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new lb_model{lstmboost::load_model(path)};
  });
}

lb_status lb_model_save(const lb_model* model, const char* path) {
  return guarded([&] {
    require(model, "model");
    require(path, "path");
    lstmboost::save_model(model->model, path);
  });
}

void lb_model_destroy(lb_model* model) { delete model; }

size_t lb_model_round_count(const lb_model* model) {
  return model ? model->model.ensemble.rounds.size() : 0;
}

lb_status lb_model_predict(const lb_model* model, const lb_record* record, double* margin,
                           int* label) {
  return guarded([&] {
    require(model, "model");
    require(record, "record");
    require(record->gender, "record->gender");
    require(record->headset, "record->headset");
    const auto gender = lstmboost::parse_gender(record->gender);
    const auto headset = lstmboost::parse_headset(record->headset);
    if (!gender) throw lstmboost::DataError(std::string("unknown gender '") + record->gender + "'");
    if (!headset) throw lstmboost::DataError(std::string("unknown headset '") + record->headset + "'");
    const lstmboost::RawRecord r{record->age, *gender, *headset, record->duration,
                                 record->motion_sickness, record->immersion_level};
    const auto p = model->model.predict(r);
    if (margin) *margin = p.margin;
    if (label) *label = p.label;
  });
}

lb_status lb_evaluate(const lb_model* model, const char* data_path, const char* report_path,
                      double* accuracy) {
  return guarded([&] {
    require(model, "model");
    require(data_path, "data_path");
    require(report_path, "report_path");
    const auto r = lstmboost::cmd_evaluate(model->model, data_path, report_path);
    if (accuracy) *accuracy = r.accuracy;
  });
}

lb_status lb_predict_file(const lb_model* model, const char* data_path, const char* out_path) {
  return guarded([&] {
    require(model, "model");
    require(data_path, "data_path");
    require(out_path, "out_path");
    lstmboost::cmd_predict(model->model, data_path, out_path);
  });
}

lb_status lb_gradcheck(uint64_t seed, const char* zeroed_gate, double* max_error, int* passed) {
  return guarded([&] {
    std::optional<lstmboost::Gate> gate;
    if (zeroed_gate) {
      gate = lstmboost::parse_gate(zeroed_gate);
      if (!gate) throw lstmboost::ArgumentError(std::string("unknown gate '") + zeroed_gate + "'");
    }
    const auto s = lstmboost::cmd_gradcheck(seed, gate);
    if (max_error) *max_error = s.max_error;
    if (passed) *passed = s.passed ? 1 : 0;
  });
}

}  // extern "C"
