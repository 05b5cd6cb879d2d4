#include "lstmboost/lstm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "lstmboost/error.hpp"

namespace lstmboost {

std::string_view gate_name(Gate g) noexcept {
  switch (g) {
    case Gate::Forget: return "forget";
    case Gate::Input: return "input";
    case Gate::Output: return "output";
    case Gate::Candidate: return "candidate";
  }
  return "?";
}

std::optional<Gate> parse_gate(std::string_view name) noexcept {
  for (Gate g : kAllGates) {
    if (gate_name(g) == name) return g;
  }
  return std::nullopt;
}

LstmParams LstmParams::zeros(std::size_t input_dim, std::size_t hidden_dim) {
  LstmParams p;
  p.input_dim = input_dim;
  p.hidden_dim = hidden_dim;
  for (auto& g : p.gates) {
    g.input_weights = Matrix(hidden_dim, input_dim);
    g.recurrent_weights = Matrix(hidden_dim, hidden_dim);
    g.bias = Vector(hidden_dim, 0.0);
  }
  p.head_weights = Vector(hidden_dim, 0.0);
  return p;
}

std::vector<std::span<double>> LstmParams::blocks() {
  std::vector<std::span<double>> out;
  out.reserve(3 * kGateCount + 2);
  for (auto& g : gates) {
    out.push_back(g.input_weights.values());
    out.push_back(g.recurrent_weights.values());
    out.push_back(g.bias);
  }
  out.push_back(head_weights);
  out.push_back(std::span<double>(&head_bias, 1));
  return out;
}

std::vector<std::span<const double>> LstmParams::blocks() const {
  std::vector<std::span<const double>> out;
  out.reserve(3 * kGateCount + 2);
  for (const auto& g : gates) {
    out.push_back(g.input_weights.values());
    out.push_back(g.recurrent_weights.values());
    out.push_back(g.bias);
  }
  out.push_back(head_weights);
  out.push_back(std::span<const double>(&head_bias, 1));
  return out;
}

std::size_t LstmParams::parameter_count() const {
  std::size_t n = 0;
  for (auto b : blocks()) n += b.size();
  return n;
}

void LstmParams::validate() const {
  const std::size_t D = input_dim;
  const std::size_t H = hidden_dim;
  if (D == 0 || H == 0) throw ConfigError("lstm params: dimensions must be positive");
  for (Gate g : kAllGates) {
    const auto& gp = gate(g);
    const std::string name(gate_name(g));
    if (gp.input_weights.rows() != H || gp.input_weights.cols() != D) {
      throw ConfigError("lstm params: " + name + " input weights have wrong shape");
    }
    if (gp.recurrent_weights.rows() != H || gp.recurrent_weights.cols() != H) {
      throw ConfigError("lstm params: " + name + " recurrent weights have wrong shape");
    }
    if (gp.bias.size() != H) throw ConfigError("lstm params: " + name + " bias has wrong length");
  }
  if (head_weights.size() != H) throw ConfigError("lstm params: head weights have wrong length");
  for (auto b : blocks()) {
    for (double v : b) {
      if (!std::isfinite(v)) throw DataError("lstm params: non-finite entry");
    }
  }
}

LstmParams init_params(std::size_t input_dim, std::size_t hidden_dim, Rng& rng) {
  if (input_dim == 0 || hidden_dim == 0) {
    throw ArgumentError("init_params: input and hidden dimensions must be at least 1");
  }
  LstmParams p = LstmParams::zeros(input_dim, hidden_dim);
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  // The half-open draw never reaches +bound; both ends stay within the range.
  auto fill = [&](std::span<double> xs) {
    for (double& v : xs) v = rng.uniform(-bound, bound);
  };
  for (auto& g : p.gates) {
    fill(g.input_weights.values());
    fill(g.recurrent_weights.values());
  }
  fill(p.head_weights);
  std::fill(p.gate(Gate::Forget).bias.begin(), p.gate(Gate::Forget).bias.end(), 1.0);
  return p;
}

StepRecord forward_step(const LstmParams& p, std::span<const double> x, const LstmState& s) {
  if (x.size() != p.input_dim) {
    throw ConfigError("forward_step: input has length " + std::to_string(x.size()) +
                      ", expected " + std::to_string(p.input_dim));
  }
  if (s.h.size() != p.hidden_dim || s.c.size() != p.hidden_dim) {
    throw ConfigError("forward_step: state length does not match hidden dimension");
  }
  const std::size_t H = p.hidden_dim;
  StepRecord r;
  r.x.assign(x.begin(), x.end());
  r.h_prev = s.h;
  r.c_prev = s.c;
  for (Gate g : kAllGates) {
    const auto& gp = p.gate(g);
    const auto k = static_cast<std::size_t>(g);
    r.pre[k] = affine(gp.input_weights, x, gp.recurrent_weights, s.h, gp.bias);
    r.act[k].resize(H);
    for (std::size_t j = 0; j < H; ++j) {
      r.act[k][j] = g == Gate::Candidate ? tanh_act(r.pre[k][j]) : sigmoid(r.pre[k][j]);
    }
  }
  const auto& f = r.activation(Gate::Forget);
  const auto& i = r.activation(Gate::Input);
  const auto& o = r.activation(Gate::Output);
  const auto& g = r.activation(Gate::Candidate);
  r.c.resize(H);
  r.tanh_c.resize(H);
  r.h.resize(H);
  for (std::size_t j = 0; j < H; ++j) {
    r.c[j] = f[j] * s.c[j] + i[j] * g[j];
    r.tanh_c[j] = tanh_act(r.c[j]);
    r.h[j] = o[j] * r.tanh_c[j];
  }
  return r;
}

ForwardResult forward_sequence(const LstmParams& p, const Sequence& seq) {
  if (seq.empty()) throw ArgumentError("forward_sequence: empty sequence");
  ForwardResult out;
  out.cache.reserve(seq.size());
  LstmState state = LstmState::zeros(p.hidden_dim);
  for (const auto& x : seq) {
    out.cache.push_back(forward_step(p, x, state));
    state = out.cache.back().state();
  }
  out.logit = dot(p.head_weights, state.h) + p.head_bias;
  out.prob = sigmoid(out.logit);
  return out;
}

double weighted_loss(double prob, int label, double weight) {
  const double q = std::clamp(prob, kProbClamp, 1.0 - kProbClamp);
  const double y = label == 1 ? 1.0 : 0.0;
  return weight * (-y * std::log(q) - (1.0 - y) * std::log(1.0 - q));
}

LstmGradient backward(const LstmParams& p, const StepCache& cache, int label, double weight) {
  const std::size_t H = p.hidden_dim;
  const std::size_t D = p.input_dim;
  if (cache.empty()) throw InternalError("backward: empty forward cache");
  for (const auto& r : cache) {
    if (r.x.size() != D || r.h.size() != H) {
      throw InternalError("backward: cache does not match parameter shapes");
    }
  }
  LstmGradient grad = LstmParams::zeros(D, H);

  const Vector& h_last = cache.back().h;
  const double prob = sigmoid(dot(p.head_weights, h_last) + p.head_bias);
  const double y = label == 1 ? 1.0 : 0.0;
  const double dlogit = weight * (prob - y);

  grad.head_bias = dlogit;
  Vector dh(H);
  for (std::size_t j = 0; j < H; ++j) {
    grad.head_weights[j] = dlogit * h_last[j];
    dh[j] = dlogit * p.head_weights[j];
  }

  Vector dc_next(H, 0.0);
  std::array<Vector, kGateCount> dpre;
  for (auto& v : dpre) v.resize(H);

  for (auto it = cache.rbegin(); it != cache.rend(); ++it) {
    const StepRecord& r = *it;
    const auto& f = r.activation(Gate::Forget);
    const auto& i = r.activation(Gate::Input);
    const auto& o = r.activation(Gate::Output);
    const auto& g = r.activation(Gate::Candidate);
    for (std::size_t j = 0; j < H; ++j) {
      const double d_o = dh[j] * r.tanh_c[j];
      const double dc = dc_next[j] + dh[j] * o[j] * (1.0 - r.tanh_c[j] * r.tanh_c[j]);
      const double d_f = dc * r.c_prev[j];
      const double d_i = dc * g[j];
      const double d_g = dc * i[j];
      dc_next[j] = dc * f[j];
      dpre[0][j] = d_f * f[j] * (1.0 - f[j]);
      dpre[1][j] = d_i * i[j] * (1.0 - i[j]);
      dpre[2][j] = d_o * o[j] * (1.0 - o[j]);
      dpre[3][j] = d_g * (1.0 - g[j] * g[j]);
    }
    Vector dh_prev(H, 0.0);
    for (Gate gate : kAllGates) {
      const auto k = static_cast<std::size_t>(gate);
      const auto& gp = p.gate(gate);
      auto& gg = grad.gate(gate);
      for (std::size_t j = 0; j < H; ++j) {
        const double da = dpre[k][j];
        if (da == 0.0) continue;
        for (std::size_t m = 0; m < D; ++m) gg.input_weights(j, m) += da * r.x[m];
        for (std::size_t m = 0; m < H; ++m) {
          gg.recurrent_weights(j, m) += da * r.h_prev[m];
          dh_prev[m] += gp.recurrent_weights(j, m) * da;
        }
        gg.bias[j] += da;
      }
    }
    dh = std::move(dh_prev);
  }
  return grad;
}

namespace {

// Loss evaluated in extended precision for the finite-difference probes: at
// eps = 1e-5 double round-off alone is ~1e-11 absolute, which swamps gradients
// near the 1e-8 comparison floor.
long double probe_loss(const LstmParams& p, const Sequence& seq, int label, double weight) {
  using R = long double;
  const std::size_t H = p.hidden_dim;
  const auto sig = [](R z) { return z >= 0 ? 1 / (1 + std::exp(-z)) : std::exp(z) / (1 + std::exp(z)); };
  std::vector<R> h(H, 0), c(H, 0), next_h(H);
  std::array<std::vector<R>, 4> act;
  for (const auto& x : seq) {
    for (Gate g : kAllGates) {
      const auto& gp = p.gate(g);
      auto& a = act[static_cast<std::size_t>(g)];
      a.assign(H, 0);
      for (std::size_t j = 0; j < H; ++j) {
        R z = gp.bias[j];
        for (std::size_t k = 0; k < p.input_dim; ++k) z += R(gp.input_weights(j, k)) * x[k];
        for (std::size_t k = 0; k < H; ++k) z += R(gp.recurrent_weights(j, k)) * h[k];
        a[j] = g == Gate::Candidate ? std::tanh(z) : sig(z);
      }
    }
    for (std::size_t j = 0; j < H; ++j) {
      c[j] = act[0][j] * c[j] + act[1][j] * act[3][j];
      next_h[j] = act[2][j] * std::tanh(c[j]);
    }
    h.swap(next_h);
  }
  R logit = p.head_bias;
  for (std::size_t j = 0; j < H; ++j) logit += R(p.head_weights[j]) * h[j];
  const R lo = kProbClamp;
  const R q = std::clamp(sig(logit), lo, 1 - lo);
  return R(weight) * (label == 1 ? -std::log(q) : -std::log(1 - q));
}

}  // namespace

double grad_check(const LstmParams& p, const Sequence& seq, int label, double weight, double eps,
                  std::optional<Gate> zeroed_gate) {
  if (!(eps > 0.0 && eps <= 1e-3)) throw ArgumentError("grad_check: eps must lie in (0, 1e-3]");
  const ForwardResult fwd = forward_sequence(p, seq);
  LstmGradient analytic = backward(p, fwd.cache, label, weight);
  if (zeroed_gate) {
    auto& gg = analytic.gate(*zeroed_gate);
    std::ranges::fill(gg.bias, 0.0);
    std::ranges::fill(gg.input_weights.values(), 0.0);
    std::ranges::fill(gg.recurrent_weights.values(), 0.0);
  }

  LstmParams probe = p;
  auto probe_blocks = probe.blocks();
  const auto grad_blocks = std::as_const(analytic).blocks();
  double worst = 0.0;
  for (std::size_t b = 0; b < probe_blocks.size(); ++b) {
    for (std::size_t k = 0; k < probe_blocks[b].size(); ++k) {
      double& theta = probe_blocks[b][k];
      const double saved = theta;
      theta = saved + eps;
      const long double up = probe_loss(probe, seq, label, weight);
      theta = saved - eps;
      const long double down = probe_loss(probe, seq, label, weight);
      theta = saved;
      const auto numeric = static_cast<double>((up - down) / (2.0L * eps));
      const double a = grad_blocks[b][k];
      const double denom = std::max({std::abs(a), std::abs(numeric), 1e-8});
      worst = std::max(worst, std::abs(a - numeric) / denom);
    }
  }
  return worst;
}

void TrainConfig::validate() const {
  if (max_epochs < 1) throw ArgumentError("train config: max_epochs must be at least 1");
  if (!(initial_lr > 0.0) || !std::isfinite(initial_lr)) {
    throw ArgumentError("train config: initial learning rate must be positive");
  }
  if (!(lr_drop_factor > 0.0 && lr_drop_factor <= 1.0)) {
    throw ArgumentError("train config: learning rate drop factor must lie in (0, 1]");
  }
  if (lr_drop_period < 1) throw ArgumentError("train config: lr_drop_period must be at least 1");
  if (!(grad_clip > 0.0)) throw ArgumentError("train config: grad_clip must be positive");
  if (hidden_dim < 1) throw ArgumentError("train config: hidden_dim must be at least 1");
}

double learning_rate(const TrainConfig& cfg, std::size_t epoch) {
  const auto drops = static_cast<double>((epoch - 1) / cfg.lr_drop_period);
  return cfg.initial_lr * std::pow(cfg.lr_drop_factor, drops);
}

TrainResult train_weak_learner(std::span<const SequenceExample> examples,
                               const SampleWeights& weights, const TrainConfig& cfg) {
  cfg.validate();
  if (examples.empty()) throw ArgumentError("train_weak_learner: no examples");
  if (examples.size() != weights.size()) {
    throw ArgumentError("train_weak_learner: " + std::to_string(examples.size()) +
                        " examples but " + std::to_string(weights.size()) + " weights");
  }
  const std::size_t n = examples.size();
  const std::size_t input_dim = examples.front().steps.empty() ? 0 : examples.front().steps[0].size();
  if (input_dim == 0) throw ArgumentError("train_weak_learner: empty input sequence");

  // Mean-one weights keep the loss on the scale of unweighted training.
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * static_cast<double>(n);

  Rng rng(cfg.seed);
  TrainResult out{init_params(input_dim, cfg.hidden_dim, rng), {}};
  LstmParams& params = out.params;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    const double lr = learning_rate(cfg, epoch);
    for (std::size_t k = n - 1; k > 0; --k) std::swap(order[k], order[rng.below(k + 1)]);

    double epoch_loss = 0.0;
    for (std::size_t idx : order) {
      const auto& ex = examples[idx];
      const ForwardResult fwd = forward_sequence(params, ex.steps);
      const double loss = weighted_loss(fwd.prob, ex.label, scaled[idx]);
      if (!std::isfinite(loss)) {
        throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) + ", example " +
                            std::to_string(idx));
      }
      epoch_loss += loss;
      if (scaled[idx] == 0.0) continue;

      LstmGradient grad = backward(params, fwd.cache, ex.label, scaled[idx]);
      auto grad_blocks = grad.blocks();
      double norm_sq = 0.0;
      for (auto b : grad_blocks) norm_sq += l2_norm_squared(b);
      const double norm = std::sqrt(norm_sq);
      const double scale = norm > cfg.grad_clip ? cfg.grad_clip / norm : 1.0;
      auto param_blocks = params.blocks();
      for (std::size_t b = 0; b < param_blocks.size(); ++b) {
        for (std::size_t j = 0; j < param_blocks[b].size(); ++j) {
          param_blocks[b][j] -= lr * scale * grad_blocks[b][j];
        }
      }
    }
    out.curve.epoch_loss.push_back(epoch_loss / static_cast<double>(n));
    out.curve.learning_rates.push_back(lr);
  }
  return out;
}

std::string_view sequence_mode_name(SequenceMode m) noexcept {
  return m == SequenceMode::Single ? "single" : "unrolled";
}

std::optional<SequenceMode> parse_sequence_mode(std::string_view name) noexcept {
  if (name == "single") return SequenceMode::Single;
  if (name == "unrolled") return SequenceMode::Unrolled;
  return std::nullopt;
}

Sequence to_sequence(std::span<const double> features, SequenceMode mode) {
  if (mode == SequenceMode::Single) return {Vector(features.begin(), features.end())};
  Sequence seq;
  seq.reserve(features.size());
  for (double v : features) seq.push_back({v});
  return seq;
}

std::size_t sequence_input_dim(std::size_t feature_count, SequenceMode mode) {
  return mode == SequenceMode::Single ? feature_count : 1;
}

}  // namespace lstmboost
