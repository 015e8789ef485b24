#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "wavervfl/activation.hpp"

namespace wavervfl {

// Frozen random hidden layer: weights and biases are drawn once from
// U[-1, 1] and never trained.
struct RandomFeatureMap {
  int input_dim = 0;   // m
  int hidden_dim = 0;  // N
  Eigen::MatrixXd weights;   // m x N
  Eigen::RowVectorXd bias;   // N
  Activation activation = Activation::Sigmoid;
  std::uint64_t seed = 0;
};

// Draws weights column by column, then biases left to right, from a single
// stream seeded with `seed`. Same seed, same map.
RandomFeatureMap init_feature_map(int input_dim, int hidden_dim, Activation activation,
                                  std::uint64_t seed);

// Hidden block H1 = act(X W + b), n x N.
Eigen::MatrixXd hidden_features(const Eigen::MatrixXd& X, const RandomFeatureMap& map);

// Enhanced matrix [X | H1], n x (m + N): original features concatenated with
// the hidden block.
Eigen::MatrixXd enhance(const Eigen::MatrixXd& X, const RandomFeatureMap& map);

}  // namespace wavervfl
