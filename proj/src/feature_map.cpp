#include "wavervfl/feature_map.hpp"

#include <stdexcept>

#include "wavervfl/errors.hpp"
#include "wavervfl/rng.hpp"

namespace wavervfl {

RandomFeatureMap init_feature_map(int input_dim, int hidden_dim, Activation activation,
                                  std::uint64_t seed) {
  if (input_dim < 1) throw std::invalid_argument("init_feature_map: input_dim must be >= 1");
  if (hidden_dim < 1) throw std::invalid_argument("init_feature_map: hidden_dim must be >= 1");
  RandomFeatureMap map;
  map.input_dim = input_dim;
  map.hidden_dim = hidden_dim;
  map.activation = activation;
  map.seed = seed;
  map.weights.resize(input_dim, hidden_dim);
  map.bias.resize(hidden_dim);
  Rng rng(seed);
  // stream order: weights column by column, then the bias row
  for (int j = 0; j < hidden_dim; ++j)
    for (int i = 0; i < input_dim; ++i) map.weights(i, j) = rng.uniform_sym();
  for (int j = 0; j < hidden_dim; ++j) map.bias(j) = rng.uniform_sym();
  return map;
}

Eigen::MatrixXd hidden_features(const Eigen::MatrixXd& X, const RandomFeatureMap& map) {
  if (X.cols() != map.input_dim)
    throw ShapeError("hidden_features: X has " + std::to_string(X.cols()) +
                     " columns, feature map expects " + std::to_string(map.input_dim));
  Eigen::MatrixXd H = (X * map.weights).rowwise() + map.bias;
  for (Eigen::Index j = 0; j < H.cols(); ++j)
    for (Eigen::Index i = 0; i < H.rows(); ++i)
      H(i, j) = apply_activation(map.activation, H(i, j));
  return H;
}

Eigen::MatrixXd enhance(const Eigen::MatrixXd& X, const RandomFeatureMap& map) {
  Eigen::MatrixXd H = hidden_features(X, map);
  Eigen::MatrixXd Z(X.rows(), X.cols() + H.cols());
  Z << X, H;
  return Z;
}

}  // namespace wavervfl
