#include "wavervfl/losses.hpp"

#include <cmath>
#include <stdexcept>

#include "wavervfl/errors.hpp"

namespace wavervfl {

namespace {

void check_params(const WaveLossParams& p) {
  if (!(p.eta > 0.0)) throw std::invalid_argument("wave loss: eta must be positive");
  if (!std::isfinite(p.gamma)) throw std::invalid_argument("wave loss: gamma must be finite");
}

// q = eta v^2 e^{gamma v} as log(q); valid for v != 0.
double log_q(double v, const WaveLossParams& p) {
  return std::log(p.eta) + 2.0 * std::log(std::fabs(v)) + p.gamma * v;
}

}  // namespace

double square_loss(const Eigen::VectorXd& residuals) {
  if (residuals.size() == 0) throw std::invalid_argument("square_loss: empty residual vector");
  return residuals.squaredNorm() / static_cast<double>(residuals.size());
}

double wave_loss(double v, const WaveLossParams& p) {
  check_params(p);
  if (!std::isfinite(v)) throw std::invalid_argument("wave_loss: v must be finite");
  if (v == 0.0) return 0.0;
  const double bound = 1.0 / p.eta;
  const double w = p.gamma * v;
  double frac;  // q / (1 + q)
  if (w < 700.0) {
    const double q = p.eta * v * v * std::exp(w);
    frac = std::isfinite(q) ? q / (1.0 + q) : 1.0;
  } else {
    // e^w alone overflows; decide through log q instead
    const double lq = log_q(v, p);
    if (lq > 37.0) {
      frac = 1.0;
    } else {
      const double q = std::exp(lq);
      frac = q / (1.0 + q);
    }
  }
  double loss = bound * frac;
  // saturation stays strictly below the bound
  if (loss >= bound) loss = std::nextafter(bound, 0.0);
  return loss;
}

double wave_loss_dv(double v, const WaveLossParams& p) {
  check_params(p);
  if (!std::isfinite(v)) throw std::invalid_argument("wave_loss_dv: v must be finite");
  if (v == 0.0) return 0.0;
  const double w = p.gamma * v;
  const double factor = 2.0 + w;
  if (factor == 0.0) return 0.0;
  if (w < 700.0) {
    const double ew = std::exp(w);
    const double q = p.eta * v * v * ew;
    if (std::isfinite(q)) {
      const double denom = 1.0 + q;
      const double r = v * ew * factor / (denom * denom);
      if (std::isfinite(r)) return r;
    }
  }
  // saturated regime: |dv| = |v (2+w)| e^w / (1+q)^2 via logs
  const double lq = log_q(v, p);
  const double l1pq = lq > 30.0 ? lq : std::log1p(std::exp(lq));
  const double lmag = std::log(std::fabs(v)) + std::log(std::fabs(factor)) + w - 2.0 * l1pq;
  const double mag = lmag < -745.0 ? 0.0 : std::exp(lmag);
  const double sign = (v > 0.0) == (factor > 0.0) ? 1.0 : -1.0;
  return sign * mag;
}

double objective(const Eigen::VectorXd& beta, const Eigen::MatrixXd& Z,
                 const Eigen::VectorXd& Y, const ObjectiveParams& p) {
  if (!(p.C > 0.0)) throw std::invalid_argument("objective: C must be positive");
  if (Z.rows() != Y.size())
    throw ShapeError("objective: Z has " + std::to_string(Z.rows()) + " rows but Y has " +
                     std::to_string(Y.size()) + " entries");
  if (Z.rows() > 0 && Z.cols() != beta.size())
    throw ShapeError("objective: Z has " + std::to_string(Z.cols()) + " columns but beta has " +
                     std::to_string(beta.size()) + " entries");
  double value = 0.5 * beta.squaredNorm();
  if (Z.rows() == 0) return value;
  const Eigen::VectorXd xi = Z * beta - Y;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < xi.size(); ++i) sum += wave_loss(xi(i), p.wave);
  return value + 0.5 * p.C * sum;
}

Eigen::VectorXd objective_gradient(const Eigen::VectorXd& beta, const Eigen::MatrixXd& Z,
                                   const Eigen::VectorXd& Y, const ObjectiveParams& p) {
  if (!(p.C > 0.0)) throw std::invalid_argument("objective_gradient: C must be positive");
  if (Z.rows() == 0) throw std::invalid_argument("objective_gradient: empty batch");
  if (Z.rows() != Y.size())
    throw ShapeError("objective_gradient: Z has " + std::to_string(Z.rows()) +
                     " rows but Y has " + std::to_string(Y.size()) + " entries");
  if (Z.cols() != beta.size())
    throw ShapeError("objective_gradient: Z has " + std::to_string(Z.cols()) +
                     " columns but beta has " + std::to_string(beta.size()) + " entries");
  const Eigen::VectorXd xi = Z * beta - Y;
  Eigen::VectorXd coef(xi.size());
  for (Eigen::Index i = 0; i < xi.size(); ++i) coef(i) = wave_loss_dv(xi(i), p.wave);
  return beta + 0.5 * p.C * (Z.transpose() * coef);
}

}  // namespace wavervfl
