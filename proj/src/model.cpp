#include "wavervfl/model.hpp"

#include <fstream>
#include <stdexcept>

#include "wavervfl/errors.hpp"

namespace wavervfl {

namespace {
constexpr int kFormatVersion = 1;

std::vector<double> to_std(const Eigen::RowVectorXd& v) {
  return {v.data(), v.data() + v.size()};
}
}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Rvfl: return "rvfl";
    case Variant::Elm: return "elm";
    case Variant::WaveRvfl: return "wave-rvfl";
  }
  throw std::invalid_argument("unknown variant");
}

Variant variant_from_name(std::string_view name) {
  if (name == "rvfl") return Variant::Rvfl;
  if (name == "elm") return Variant::Elm;
  if (name == "wave-rvfl") return Variant::WaveRvfl;
  throw std::invalid_argument("unknown variant '" + std::string(name) +
                              "' (expected rvfl, elm or wave-rvfl)");
}

double label_from_score(double score) { return score >= 0.0 ? 1.0 : -1.0; }

Eigen::VectorXd decision_scores(const ModelWeights& model, const Eigen::MatrixXd& X) {
  const Eigen::MatrixXd* input = &X;
  Eigen::MatrixXd scaled;
  if (model.normalization) {
    scaled = apply_minmax(*model.normalization, X);
    input = &scaled;
  }
  const Eigen::MatrixXd Z = model.variant == Variant::Elm
                                ? hidden_features(*input, model.feature_map)
                                : enhance(*input, model.feature_map);
  if (Z.cols() != model.beta.size())
    throw ShapeError("decision_scores: design matrix width " + std::to_string(Z.cols()) +
                     " does not match beta length " + std::to_string(model.beta.size()));
  return Z * model.beta;
}

Eigen::VectorXd predict(const ModelWeights& model, const Eigen::MatrixXd& X) {
  Eigen::VectorXd scores = decision_scores(model, X);
  for (Eigen::Index i = 0; i < scores.size(); ++i) scores(i) = label_from_score(scores(i));
  return scores;
}

nlohmann::json model_to_json(const ModelWeights& model) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["variant"] = variant_name(model.variant);
  j["m"] = model.feature_map.input_dim;
  j["N"] = model.feature_map.hidden_dim;
  j["activation_id"] = activation_id(model.feature_map.activation);
  j["seed"] = model.feature_map.seed;
  j["C"] = model.C;
  if (model.eta) j["eta"] = *model.eta;
  if (model.gamma) j["gamma"] = *model.gamma;
  j["beta"] = std::vector<double>(model.beta.data(), model.beta.data() + model.beta.size());
  if (model.normalization) {
    j["normalization"] = {{"min", to_std(model.normalization->min)},
                          {"max", to_std(model.normalization->max)}};
  }
  return j;
}

ModelWeights model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format_version").get<int>() != kFormatVersion)
      throw ParseError("unsupported model format_version " +
                       j.at("format_version").dump());
    ModelWeights model;
    model.variant = variant_from_name(j.at("variant").get<std::string>());
    const int m = j.at("m").get<int>();
    const int N = j.at("N").get<int>();
    const Activation act = activation_from_id(j.at("activation_id").get<int>());
    const auto seed = j.at("seed").get<std::uint64_t>();
    model.feature_map = init_feature_map(m, N, act, seed);
    model.C = j.at("C").get<double>();
    if (j.contains("eta")) model.eta = j.at("eta").get<double>();
    if (j.contains("gamma")) model.gamma = j.at("gamma").get<double>();
    const auto beta = j.at("beta").get<std::vector<double>>();
    const std::size_t expected =
        model.variant == Variant::Elm ? static_cast<std::size_t>(N)
                                      : static_cast<std::size_t>(m + N);
    if (beta.size() != expected)
      throw ParseError("model beta has " + std::to_string(beta.size()) + " entries, expected " +
                       std::to_string(expected));
    model.beta = Eigen::Map<const Eigen::VectorXd>(beta.data(),
                                                   static_cast<Eigen::Index>(beta.size()));
    if (!model.beta.allFinite()) throw ParseError("model beta contains non-finite entries");
    if (j.contains("normalization")) {
      const auto& norm = j.at("normalization");
      const auto lo = norm.at("min").get<std::vector<double>>();
      const auto hi = norm.at("max").get<std::vector<double>>();
      if (lo.size() != static_cast<std::size_t>(m) || hi.size() != static_cast<std::size_t>(m))
        throw ParseError("model normalization stats do not match m");
      MinMaxStats stats;
      stats.min = Eigen::Map<const Eigen::RowVectorXd>(lo.data(), static_cast<Eigen::Index>(m));
      stats.max = Eigen::Map<const Eigen::RowVectorXd>(hi.data(), static_cast<Eigen::Index>(m));
      model.normalization = std::move(stats);
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed model JSON: ") + e.what());
  }
}

void save_model(const ModelWeights& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write model file: " + path.string());
  out << model_to_json(model).dump(2) << '\n';
}

ModelWeights load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed model JSON in " + path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace wavervfl
