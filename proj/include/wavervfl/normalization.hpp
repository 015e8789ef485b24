#pragma once

#include <Eigen/Dense>

namespace wavervfl {

// Per-feature min/max gathered on training data only.
struct MinMaxStats {
  Eigen::RowVectorXd min;
  Eigen::RowVectorXd max;
};

MinMaxStats fit_minmax(const Eigen::MatrixXd& X);

// Maps each feature to [0, 1] using the fitted stats; features that were
// constant on the training data map to 0.
Eigen::MatrixXd apply_minmax(const MinMaxStats& stats, const Eigen::MatrixXd& X);

}  // namespace wavervfl
