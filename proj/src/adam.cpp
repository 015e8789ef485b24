#include "wavervfl/adam.hpp"

#include <cmath>
#include <cstring>
#include <iostream>
#include <stdexcept>

#include "wavervfl/errors.hpp"
#include "wavervfl/feature_map.hpp"

namespace wavervfl {

namespace {

constexpr std::uint64_t kBatchSalt = 0x42415443ull;  // "BATC"

void append_double(std::string& buf, double v) {
  char raw[sizeof(double)];
  std::memcpy(raw, &v, sizeof(double));
  buf.append(raw, sizeof(double));
}

void append_u64(std::string& buf, std::uint64_t v) {
  char raw[sizeof(std::uint64_t)];
  std::memcpy(raw, &v, sizeof(std::uint64_t));
  buf.append(raw, sizeof(std::uint64_t));
}

void validate_config(const TrainConfig& cfg) {
  if (!(cfg.C > 0.0)) throw std::invalid_argument("train config: C must be positive");
  if (!(cfg.eta > 0.0)) throw std::invalid_argument("train config: eta must be positive");
  if (cfg.hidden_dim < 1) throw std::invalid_argument("train config: hidden_dim must be >= 1");
  if (!(cfg.alpha >= 0.0)) throw std::invalid_argument("train config: alpha must be >= 0");
  if (!(cfg.delta >= 0.0)) throw std::invalid_argument("train config: delta must be >= 0");
  if (cfg.max_iters < 1) throw std::invalid_argument("train config: max_iters must be >= 1");
  if (cfg.batch_size < 0) throw std::invalid_argument("train config: batch_size must be >= 0");
  if (!(cfg.lambda1 >= 0.0 && cfg.lambda1 < 1.0))
    throw std::invalid_argument("train config: lambda1 must lie in [0, 1)");
  if (!(cfg.lambda2 >= 0.0 && cfg.lambda2 < 1.0))
    throw std::invalid_argument("train config: lambda2 must lie in [0, 1)");
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("train config: epsilon must be positive");
}

}  // namespace

std::vector<int> sample_minibatch(int n, int s, Rng& rng) {
  if (s < 1) throw std::invalid_argument("sample_minibatch: batch size must be positive");
  return sample_without_replacement(n, s, rng);
}

std::pair<AdamState, Eigen::VectorXd> adam_step(const AdamState& state,
                                                const Eigen::VectorXd& beta,
                                                const Eigen::VectorXd& grad) {
  const Eigen::Index d = beta.size();
  if (state.g.size() != d || state.u.size() != d || grad.size() != d)
    throw ShapeError("adam_step: moment/parameter/gradient lengths disagree");
  if (!grad.allFinite())
    throw NumericalError("adam_step: non-finite gradient at iteration " +
                         std::to_string(state.t + 1));

  AdamState next = state;
  next.t = state.t + 1;
  next.g = state.lambda1 * state.g + (1.0 - state.lambda1) * grad;
  next.u = state.lambda2 * state.u + (1.0 - state.lambda2) * grad.cwiseProduct(grad);
  const double c1 = 1.0 - std::pow(state.lambda1, next.t);
  const double c2 = 1.0 - std::pow(state.lambda2, next.t);
  const Eigen::ArrayXd g_hat = next.g.array() / c1;
  const Eigen::ArrayXd u_hat = next.u.array() / c2;
  Eigen::VectorXd beta_next =
      beta.array() - state.alpha * g_hat / (u_hat.sqrt() + state.epsilon);
  return {std::move(next), std::move(beta_next)};
}

std::uint64_t train_config_hash(const TrainConfig& cfg) {
  std::string buf;
  buf.reserve(16 * sizeof(double));
  append_double(buf, cfg.C);
  append_double(buf, cfg.eta);
  append_double(buf, cfg.gamma);
  append_u64(buf, static_cast<std::uint64_t>(cfg.hidden_dim));
  append_u64(buf, static_cast<std::uint64_t>(activation_id(cfg.activation)));
  append_double(buf, cfg.alpha);
  append_double(buf, cfg.delta);
  append_u64(buf, static_cast<std::uint64_t>(cfg.max_iters));
  append_u64(buf, static_cast<std::uint64_t>(cfg.batch_size));
  append_double(buf, cfg.lambda1);
  append_double(buf, cfg.lambda2);
  append_double(buf, cfg.epsilon);
  append_double(buf, cfg.init_value);
  return fnv1a(buf.data(), buf.size());
}

TrainResult train_wave_rvfl(const Dataset& train, const TrainConfig& cfg,
                            const TrainTrace& trace) {
  if (train.n() == 0) throw std::invalid_argument("train_wave_rvfl: empty dataset");
  validate_config(cfg);

  const int n = static_cast<int>(train.n());
  int s = cfg.batch_size;
  if (s == 0) s = n < 500 ? 32 : 256;
  if (s > n) {
    std::cerr << "warning: batch size " << s << " clamped to n = " << n << "\n";
    s = n;
  }

  const std::uint64_t run_seed = mix_seed(cfg.seed, train_config_hash(cfg));
  const RandomFeatureMap map = init_feature_map(static_cast<int>(train.m()), cfg.hidden_dim,
                                                cfg.activation, run_seed);
  const Eigen::MatrixXd Z = enhance(train.X, map);
  const Eigen::Index d = Z.cols();
  const ObjectiveParams params{cfg.C, {cfg.eta, cfg.gamma}};

  Eigen::VectorXd beta = Eigen::VectorXd::Constant(d, cfg.init_value);
  AdamState state;
  state.g = Eigen::VectorXd::Constant(d, cfg.init_value);
  state.u = Eigen::VectorXd::Constant(d, cfg.init_value);
  state.alpha = cfg.alpha;
  state.lambda1 = cfg.lambda1;
  state.lambda2 = cfg.lambda2;
  state.epsilon = cfg.epsilon;

  Rng batch_rng(mix_seed(run_seed, kBatchSalt));
  TrainResult result;
  for (int t = 1; t <= cfg.max_iters; ++t) {
    const auto idx = sample_minibatch(n, s, batch_rng);
    const Eigen::MatrixXd Zb = Z(idx, Eigen::all);
    const Eigen::VectorXd Yb = train.Y(idx);
    const Eigen::VectorXd grad = objective_gradient(beta, Zb, Yb, params);
    auto [next_state, next_beta] = adam_step(state, beta, grad);
    const double step = (next_beta - beta).lpNorm<Eigen::Infinity>();
    state = std::move(next_state);
    beta = std::move(next_beta);
    result.iterations = t;
    if (trace) trace(t, objective(beta, Z, train.Y, params), step);
    if (step < cfg.delta) {
      result.converged = true;
      break;
    }
  }

  result.final_objective = objective(beta, Z, train.Y, params);
  result.model.variant = Variant::WaveRvfl;
  result.model.feature_map = map;
  result.model.beta = std::move(beta);
  result.model.C = cfg.C;
  result.model.eta = cfg.eta;
  result.model.gamma = cfg.gamma;
  return result;
}

}  // namespace wavervfl
