#pragma once

#include <Eigen/Dense>

namespace wavervfl {

struct WaveLossParams {
  double eta = 1.0;    // shape, > 0
  double gamma = 1.0;  // asymmetry
};

struct ObjectiveParams {
  double C = 1.0;  // loss weight, > 0
  WaveLossParams wave;
};

// Mean squared residual (1/n) sum xi_i^2.
double square_loss(const Eigen::VectorXd& residuals);

// Bounded, smooth, asymmetric loss:
//   L(v) = (1/eta) * (1 - 1 / (1 + eta v^2 e^{gamma v})).
// Always in [0, 1/eta), L(0) = 0. Large gamma*v is evaluated in log space so
// the value saturates toward the bound instead of overflowing.
double wave_loss(double v, const WaveLossParams& p);

// dL/dv = v e^{gamma v} (2 + gamma v) / (1 + eta v^2 e^{gamma v})^2.
double wave_loss_dv(double v, const WaveLossParams& p);

// Regularized empirical risk over residuals xi = Z beta - Y:
//   f(beta) = 0.5 |beta|^2 + (C/2) sum_i wave_loss(xi_i).
double objective(const Eigen::VectorXd& beta, const Eigen::MatrixXd& Z,
                 const Eigen::VectorXd& Y, const ObjectiveParams& p);

// Exact gradient of `objective` on a batch:
//   beta + (C/2) sum_i wave_loss_dv(xi_i) z_i.
Eigen::VectorXd objective_gradient(const Eigen::VectorXd& beta, const Eigen::MatrixXd& Z,
                                   const Eigen::VectorXd& Y, const ObjectiveParams& p);

}  // namespace wavervfl
