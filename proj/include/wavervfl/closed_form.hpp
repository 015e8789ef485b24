#pragma once

#include <Eigen/Dense>

#include "wavervfl/dataset.hpp"
#include "wavervfl/model.hpp"

namespace wavervfl {

// Ridge solution beta = argmin |Z beta - Y|^2 + |beta|^2 / C, solved through
// whichever Gram matrix is smaller:
//   n <  d:  beta = Z^T (Z Z^T + I/C)^{-1} Y
//   n >= d:  beta = (Z^T Z + I/C)^{-1} Z^T Y
// Both branches agree to floating-point accuracy. Throws NumericalError with
// the problem dimensions if the factorization fails or the solution is not
// finite.
Eigen::VectorXd solve_ridge(const Eigen::MatrixXd& Z, const Eigen::VectorXd& Y, double C);

// Ridge fit on the enhanced matrix [X | H1].
ModelWeights fit_rvfl(const Dataset& train, double C, const RandomFeatureMap& map);

// Ridge fit on the hidden block H1 alone.
ModelWeights fit_elm(const Dataset& train, double C, const RandomFeatureMap& map);

}  // namespace wavervfl
