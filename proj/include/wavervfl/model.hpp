#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include "json.hpp"
#include <optional>
#include <string>
#include <string_view>

#include "wavervfl/feature_map.hpp"
#include "wavervfl/normalization.hpp"

namespace wavervfl {

enum class Variant {
  Rvfl,      // ridge on [X | H1]
  Elm,       // ridge on H1 only (no direct links)
  WaveRvfl,  // wave loss on [X | H1], trained iteratively
};

const char* variant_name(Variant v);
Variant variant_from_name(std::string_view name);

// A trained classifier: the frozen feature map plus output weights.
struct ModelWeights {
  Variant variant = Variant::Rvfl;
  RandomFeatureMap feature_map;
  Eigen::VectorXd beta;  // m + N entries (N for elm)
  double C = 1.0;
  std::optional<double> eta;    // wave-rvfl only
  std::optional<double> gamma;  // wave-rvfl only
  // When present, inputs are min-max scaled with these train-time stats
  // before scoring.
  std::optional<MinMaxStats> normalization;
};

// sign with sign(0) = +1.
double label_from_score(double score);

// Raw scores z_i . beta.
Eigen::VectorXd decision_scores(const ModelWeights& model, const Eigen::MatrixXd& X);

// Predicted labels, each exactly -1 or +1.
Eigen::VectorXd predict(const ModelWeights& model, const Eigen::MatrixXd& X);

nlohmann::json model_to_json(const ModelWeights& model);
ModelWeights model_from_json(const nlohmann::json& j);  // throws ParseError

// JSON round trip through disk; save + load reproduces the model exactly.
void save_model(const ModelWeights& model, const std::filesystem::path& path);
ModelWeights load_model(const std::filesystem::path& path);

}  // namespace wavervfl
