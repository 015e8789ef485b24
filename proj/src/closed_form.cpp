#include "wavervfl/closed_form.hpp"

#include <Eigen/Cholesky>
#include <stdexcept>
#include <string>

#include "wavervfl/errors.hpp"

namespace wavervfl {

namespace {

std::string dims(const Eigen::MatrixXd& Z, double C) {
  return "n=" + std::to_string(Z.rows()) + ", d=" + std::to_string(Z.cols()) +
         ", C=" + std::to_string(C);
}

}  // namespace

Eigen::VectorXd solve_ridge(const Eigen::MatrixXd& Z, const Eigen::VectorXd& Y, double C) {
  if (!(C > 0.0)) throw std::invalid_argument("solve_ridge: C must be positive");
  if (Z.rows() != Y.size())
    throw ShapeError("solve_ridge: Z has " + std::to_string(Z.rows()) + " rows but Y has " +
                     std::to_string(Y.size()) + " entries");
  if (!Z.allFinite()) throw NumericalError("solve_ridge: design matrix has non-finite entries");

  const Eigen::Index n = Z.rows();
  const Eigen::Index d = Z.cols();
  const double ridge = 1.0 / C;
  Eigen::VectorXd beta;
  if (n < d) {
    // beta = Z^T (Z Z^T + I/C)^{-1} Y
    Eigen::MatrixXd G = Z * Z.transpose();
    G.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success)
      throw NumericalError("solve_ridge: dual Gram factorization failed (" + dims(Z, C) + ")");
    beta = Z.transpose() * llt.solve(Y);
  } else {
    // beta = (Z^T Z + I/C)^{-1} Z^T Y
    Eigen::MatrixXd G = Z.transpose() * Z;
    G.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(G);
    if (llt.info() != Eigen::Success)
      throw NumericalError("solve_ridge: primal Gram factorization failed (" + dims(Z, C) + ")");
    beta = llt.solve(Z.transpose() * Y);
  }
  if (!beta.allFinite())
    throw NumericalError("solve_ridge: solution is not finite (" + dims(Z, C) +
                         "); system is too ill-conditioned");
  return beta;
}

ModelWeights fit_rvfl(const Dataset& train, double C, const RandomFeatureMap& map) {
  if (train.n() == 0) throw std::invalid_argument("fit_rvfl: empty dataset");
  ModelWeights model;
  model.variant = Variant::Rvfl;
  model.feature_map = map;
  model.C = C;
  model.beta = solve_ridge(enhance(train.X, map), train.Y, C);
  return model;
}

ModelWeights fit_elm(const Dataset& train, double C, const RandomFeatureMap& map) {
  if (train.n() == 0) throw std::invalid_argument("fit_elm: empty dataset");
  ModelWeights model;
  model.variant = Variant::Elm;
  model.feature_map = map;
  model.C = C;
  model.beta = solve_ridge(hidden_features(train.X, map), train.Y, C);
  return model;
}

}  // namespace wavervfl
