#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lstmboost/numerics.hpp"
#include "lstmboost/sample_weights.hpp"

namespace lstmboost {

enum class Gate : std::size_t { Forget = 0, Input = 1, Output = 2, Candidate = 3 };
inline constexpr std::size_t kGateCount = 4;
inline constexpr std::array<Gate, kGateCount> kAllGates = {Gate::Forget, Gate::Input, Gate::Output,
                                                           Gate::Candidate};

std::string_view gate_name(Gate g) noexcept;
std::optional<Gate> parse_gate(std::string_view name) noexcept;

struct GateParams {
  Matrix input_weights;      // H x D
  Matrix recurrent_weights;  // H x H
  Vector bias;               // H

  friend bool operator==(const GateParams&, const GateParams&) = default;
};

/// Weights of a single-layer LSTM cell plus a logistic head on the final
/// hidden state. The same type holds gradients.
struct LstmParams {
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  std::array<GateParams, kGateCount> gates;
  Vector head_weights;  // H
  double head_bias = 0.0;

  static LstmParams zeros(std::size_t input_dim, std::size_t hidden_dim);

  GateParams& gate(Gate g) { return gates[static_cast<std::size_t>(g)]; }
  const GateParams& gate(Gate g) const { return gates[static_cast<std::size_t>(g)]; }

  /// Every parameter array in a fixed order: per gate (W, U, b), then head
  /// weights, then the head bias.
  std::vector<std::span<double>> blocks();
  std::vector<std::span<const double>> blocks() const;
  std::size_t parameter_count() const;

  /// Throws ConfigError on inconsistent shapes and DataError on non-finite
  /// entries.
  void validate() const;

  friend bool operator==(const LstmParams&, const LstmParams&) = default;
};

using LstmGradient = LstmParams;

struct LstmState {
  Vector h;
  Vector c;

  static LstmState zeros(std::size_t hidden_dim) {
    return {Vector(hidden_dim, 0.0), Vector(hidden_dim, 0.0)};
  }
};

/// Forward trace of one time step.
struct StepRecord {
  Vector x;
  Vector h_prev;
  Vector c_prev;
  std::array<Vector, kGateCount> pre;  // gate pre-activations
  std::array<Vector, kGateCount> act;  // f, i, o after sigmoid; g after tanh
  Vector c;
  Vector tanh_c;
  Vector h;

  const Vector& activation(Gate g) const { return act[static_cast<std::size_t>(g)]; }
  LstmState state() const { return {h, c}; }
};

using StepCache = std::vector<StepRecord>;
using Sequence = std::vector<Vector>;

struct ForwardResult {
  double prob = 0.5;
  double logit = 0.0;
  StepCache cache;
};

/// Uniform weights in [-1/sqrt(H), 1/sqrt(H)], zero biases except the forget
/// bias which starts at +1.
LstmParams init_params(std::size_t input_dim, std::size_t hidden_dim, Rng& rng);

StepRecord forward_step(const LstmParams& p, std::span<const double> x, const LstmState& s);

/// Runs the cell from a zero state and applies the head to the final hidden
/// state. Throws ArgumentError on an empty sequence.
ForwardResult forward_sequence(const LstmParams& p, const Sequence& seq);

inline constexpr double kProbClamp = 1e-12;

/// Weighted binary cross-entropy with the probability clamped away from 0, 1.
double weighted_loss(double prob, int label, double weight);

/// Exact gradient of weighted_loss(forward_sequence(p, seq)) by
/// backpropagation through time over the recorded trace.
LstmGradient backward(const LstmParams& p, const StepCache& cache, int label, double weight);

/// Compares backward() to central finite differences over every parameter
/// and returns max |a - n| / max(|a|, |n|, 1e-8). When zeroed_gate is set,
/// that gate's analytic gradient is zeroed first (mutation testing hook).
double grad_check(const LstmParams& p, const Sequence& seq, int label, double weight, double eps,
                  std::optional<Gate> zeroed_gate = std::nullopt);

struct TrainConfig {
  std::size_t max_epochs = 50;
  double initial_lr = 0.01;
  double lr_drop_factor = 0.1;
  std::size_t lr_drop_period = 10;
  double grad_clip = 1.0;
  std::uint64_t seed = 0;
  std::size_t hidden_dim = 16;

  void validate() const;
};

/// Piecewise-constant schedule: initial_lr * factor^floor((epoch-1)/period),
/// epoch counted from 1.
double learning_rate(const TrainConfig& cfg, std::size_t epoch);

struct LossCurve {
  std::vector<double> epoch_loss;
  std::vector<double> learning_rates;
};

struct SequenceExample {
  Sequence steps;
  int label = 0;
};

struct TrainResult {
  LstmParams params;
  LossCurve curve;
};

/// Per-example SGD over a freshly shuffled order each epoch. Sample weights
/// scale each example's loss after renormalizing them to mean one.
TrainResult train_weak_learner(std::span<const SequenceExample> examples,
                               const SampleWeights& weights, const TrainConfig& cfg);

/// How a tabular feature row is fed to the recurrent cell.
enum class SequenceMode {
  Single,    // one time step carrying the full feature vector
  Unrolled,  // one time step per feature, input_dim = 1
};

std::string_view sequence_mode_name(SequenceMode m) noexcept;
std::optional<SequenceMode> parse_sequence_mode(std::string_view name) noexcept;

Sequence to_sequence(std::span<const double> features, SequenceMode mode);
std::size_t sequence_input_dim(std::size_t feature_count, SequenceMode mode);

}  // namespace lstmboost
