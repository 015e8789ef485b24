#include "wavervfl/normalization.hpp"

#include <stdexcept>

#include "wavervfl/errors.hpp"

namespace wavervfl {

MinMaxStats fit_minmax(const Eigen::MatrixXd& X) {
  if (X.rows() == 0) throw std::invalid_argument("fit_minmax: empty matrix");
  return MinMaxStats{X.colwise().minCoeff(), X.colwise().maxCoeff()};
}

Eigen::MatrixXd apply_minmax(const MinMaxStats& stats, const Eigen::MatrixXd& X) {
  if (X.cols() != stats.min.size())
    throw ShapeError("apply_minmax: X has " + std::to_string(X.cols()) +
                     " columns, stats have " + std::to_string(stats.min.size()));
  Eigen::MatrixXd out(X.rows(), X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double range = stats.max(j) - stats.min(j);
    if (range == 0.0) {
      out.col(j).setZero();
    } else {
      out.col(j) = (X.col(j).array() - stats.min(j)) / range;
    }
  }
  return out;
}

}  // namespace wavervfl
