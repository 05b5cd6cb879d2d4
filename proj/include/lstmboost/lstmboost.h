/* C interface to the lstmboost library: boosted LSTM binary classifier for
 * VR user-experience tables.
 *
 * Every function returning lb_status reports failures through the status
 * code; lb_last_error() then holds a message for the calling thread. Handles
 * are opaque and owned by the caller until passed to the matching destroy
 * function. Status values double as process exit codes of the CLI. */
#ifndef LSTMBOOST_H
#define LSTMBOOST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LSTMBOOST_BUILD)
#    define LB_API __declspec(dllexport)
#  else
#    define LB_API __declspec(dllimport)
#  endif
#else
#  define LB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lb_status {
  LB_OK = 0,
  LB_ERR_ARGUMENT = 2,
  LB_ERR_DATA = 3,
  LB_ERR_TRAINING = 4,
  LB_ERR_IO = 5,
  LB_ERR_INTERNAL = 6
} lb_status;

typedef struct lb_config lb_config;
typedef struct lb_model lb_model;

/* One table row. gender: "Male", "Female" or "Other"; headset: "HTC Vive",
 * "Oculus Rift" or "PlayStation VR". */
typedef struct lb_record {
  int age;
  const char* gender;
  const char* headset;
  double duration;
  int motion_sickness;
  int immersion_level;
} lb_record;

typedef struct lb_train_summary {
  double train_accuracy;
  double test_accuracy;
  double majority_rate;
  double oracle_accuracy; /* negative when the data was not synthetic */
  size_t rounds_attempted;
  size_t rounds_accepted;
  int near_chance;
} lb_train_summary;

typedef void (*lb_message_fn)(const char* message, void* user);

LB_API const char* lb_version(void);
LB_API const char* lb_last_error(void);
/* Receives progress and warning lines for the calling thread. NULL disables. */
LB_API void lb_set_message_handler(lb_message_fn fn, void* user);

LB_API lb_status lb_config_create(lb_config** out);
LB_API void lb_config_destroy(lb_config* cfg);
/* Keys are the CLI long option names, e.g. "epochs", "lr", "rounds". */
LB_API lb_status lb_config_set(lb_config* cfg, const char* key, const char* value);
LB_API lb_status lb_config_load_file(lb_config* cfg, const char* path);

LB_API lb_status lb_gen_data(size_t n, uint64_t seed, double signal_strength, const char* out_path,
                             double* oracle_accuracy);

/* Trains and writes every output file into the configured out-dir. Both out
 * parameters are optional. */
LB_API lb_status lb_train(const lb_config* cfg, lb_model** out_model, lb_train_summary* summary);

LB_API lb_status lb_model_load(const char* path, lb_model** out);
LB_API lb_status lb_model_save(const lb_model* model, const char* path);
LB_API void lb_model_destroy(lb_model* model);
LB_API size_t lb_model_round_count(const lb_model* model);
LB_API lb_status lb_model_predict(const lb_model* model, const lb_record* record, double* margin,
                                  int* label);

LB_API lb_status lb_evaluate(const lb_model* model, const char* data_path, const char* report_path,
                             double* accuracy);
LB_API lb_status lb_predict_file(const lb_model* model, const char* data_path, const char* out_path);

/* Finite-difference check of the LSTM gradients over ten random instances.
 * zeroed_gate ("forget", "input", "output", "candidate" or NULL) zeroes that
 * gate's analytic gradient to demonstrate that the check catches it. Returns
 * LB_OK with *passed = 0 when the tolerance is exceeded. */
LB_API lb_status lb_gradcheck(uint64_t seed, const char* zeroed_gate, double* max_error,
                              int* passed);

#ifdef __cplusplus
}
#endif

#endif /* LSTMBOOST_H */
