#include "lstmboost/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "lstmboost/error.hpp"

namespace lstmboost {

using nlohmann::json;

std::size_t Model::feature_count() const { return feature_names(target).size(); }

Prediction Model::predict_features(std::span<const double> raw_features) const {
  if (raw_features.size() != feature_count()) {
    throw DataError("model expects " + std::to_string(feature_count()) + " features, got " +
                    std::to_string(raw_features.size()));
  }
  const Vector x = standardizer.apply(raw_features);
  return ensemble_predict(ensemble, x);
}

Prediction Model::predict(const RawRecord& r) const {
  return predict_features(encode_features(r, target));
}

namespace {

json matrix_to_json(const Matrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()},
              {"data", std::vector<double>(m.values().begin(), m.values().end())}};
}

Matrix matrix_from_json(const json& j) {
  Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != m.values().size()) throw DataError("model: matrix data length mismatch");
  std::ranges::copy(data, m.values().begin());
  return m;
}

json params_to_json(const LstmParams& p) {
  json gates = json::object();
  for (Gate g : kAllGates) {
    const auto& gp = p.gate(g);
    gates[std::string(gate_name(g))] = {{"input_weights", matrix_to_json(gp.input_weights)},
                                        {"recurrent_weights", matrix_to_json(gp.recurrent_weights)},
                                        {"bias", gp.bias}};
  }
  return {{"input_dim", p.input_dim}, {"hidden_dim", p.hidden_dim}, {"gates", gates},
          {"head_weights", p.head_weights}, {"head_bias", p.head_bias}};
}

LstmParams params_from_json(const json& j) {
  LstmParams p;
  p.input_dim = j.at("input_dim").get<std::size_t>();
  p.hidden_dim = j.at("hidden_dim").get<std::size_t>();
  for (Gate g : kAllGates) {
    const json& gj = j.at("gates").at(std::string(gate_name(g)));
    auto& gp = p.gate(g);
    gp.input_weights = matrix_from_json(gj.at("input_weights"));
    gp.recurrent_weights = matrix_from_json(gj.at("recurrent_weights"));
    gp.bias = gj.at("bias").get<Vector>();
  }
  p.head_weights = j.at("head_weights").get<Vector>();
  p.head_bias = j.at("head_bias").get<double>();
  p.validate();
  return p;
}

}  // namespace

std::string model_to_json(const Model& m) {
  json rounds = json::array();
  for (const auto& r : m.ensemble.rounds) {
    rounds.push_back({{"alpha", r.alpha}, {"lstm", params_to_json(r.learner.params)}});
  }
  std::vector<int> constant;
  for (bool c : m.standardizer.constant) constant.push_back(c ? 1 : 0);
  const json doc = {
      {"format", "lstmboost-model"},
      {"version", kModelFormatVersion},
      {"label_convention",
       {{"negative", m.ensemble.convention.negative},
        {"positive", m.ensemble.convention.positive},
        {"signed_negative", -1},
        {"signed_positive", 1}}},
      {"target", {{"column", std::string(to_string(m.target.column))}, {"threshold", m.target.threshold}}},
      {"sequence_mode", std::string(sequence_mode_name(m.mode))},
      {"features", feature_names(m.target)},
      {"standardizer",
       {{"mean", m.standardizer.mean}, {"stddev", m.standardizer.stddev}, {"constant", constant}}},
      {"rounds", rounds},
  };
  return doc.dump(1) + "\n";
}

Model model_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != "lstmboost-model") {
      throw DataError("model: not an lstmboost model file");
    }
    if (doc.at("version").get<int>() != kModelFormatVersion) {
      throw DataError("model: unsupported format version " + doc.at("version").dump());
    }
    Model m;
    const json& conv = doc.at("label_convention");
    m.ensemble.convention = {conv.at("negative").get<int>(), conv.at("positive").get<int>()};
    const auto column = parse_target_column(doc.at("target").at("column").get<std::string>());
    if (!column) throw DataError("model: unknown target column");
    m.target = {*column, doc.at("target").at("threshold").get<int>()};
    const auto mode = parse_sequence_mode(doc.at("sequence_mode").get<std::string>());
    if (!mode) throw DataError("model: unknown sequence mode");
    m.mode = *mode;
    if (doc.at("features").get<std::vector<std::string>>() != feature_names(m.target)) {
      throw DataError("model: feature layout does not match its target definition");
    }
    const json& sj = doc.at("standardizer");
    m.standardizer.mean = sj.at("mean").get<std::vector<double>>();
    m.standardizer.stddev = sj.at("stddev").get<std::vector<double>>();
    for (int c : sj.at("constant").get<std::vector<int>>()) m.standardizer.constant.push_back(c != 0);
    if (m.standardizer.stddev.size() != m.standardizer.mean.size() ||
        m.standardizer.constant.size() != m.standardizer.mean.size() ||
        m.standardizer.mean.size() > m.feature_count()) {
      throw DataError("model: inconsistent standardizer");
    }
    const std::size_t input_dim = sequence_input_dim(m.feature_count(), m.mode);
    for (const json& rj : doc.at("rounds")) {
      Round<LstmLearner> round;
      round.alpha = rj.at("alpha").get<double>();
      if (!(round.alpha > 0.0) || !std::isfinite(round.alpha)) {
        throw DataError("model: round weights must be positive and finite");
      }
      round.learner.params = params_from_json(rj.at("lstm"));
      round.learner.mode = m.mode;
      if (round.learner.params.input_dim != input_dim) {
        throw DataError("model: weak learner input size does not match the feature layout");
      }
      m.ensemble.rounds.push_back(std::move(round));
    }
    if (m.ensemble.rounds.empty()) throw DataError("model: no boosting rounds");
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("model: malformed file: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("model: ") + e.what());
  }
}

void save_model(const Model& m, const std::filesystem::path& path) {
  const std::string text = model_to_json(m);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out.flush()) throw IoError("failed writing '" + path.string() + "'");
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace lstmboost
