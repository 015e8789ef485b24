#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "wavervfl/dataset.hpp"
#include "wavervfl/losses.hpp"
#include "wavervfl/model.hpp"
#include "wavervfl/rng.hpp"

namespace wavervfl {

// Adam moment estimates. Bias correction uses the step count t.
struct AdamState {
  Eigen::VectorXd g;  // first moment
  Eigen::VectorXd u;  // second moment
  int t = 0;
  double alpha = 0.01;
  double lambda1 = 0.9;
  double lambda2 = 0.999;
  double epsilon = 1e-8;
};

// s distinct row indices sampled uniformly without replacement.
std::vector<int> sample_minibatch(int n, int s, Rng& rng);

// One Adam update. Returns the advanced state and the new parameter vector.
std::pair<AdamState, Eigen::VectorXd> adam_step(const AdamState& state,
                                                const Eigen::VectorXd& beta,
                                                const Eigen::VectorXd& grad);

struct TrainConfig {
  double C = 1.0;
  double eta = 1.0;
  double gamma = 1.0;
  int hidden_dim = 23;
  Activation activation = Activation::Sigmoid;
  double alpha = 0.01;     // learning rate
  double delta = 1e-5;     // stop when |step|_inf < delta
  int max_iters = 1000;
  int batch_size = 0;      // 0: 32 when n < 500, else 256 (capped at n)
  std::uint64_t seed = 0;
  double lambda1 = 0.9;
  double lambda2 = 0.999;
  double epsilon = 1e-8;
  double init_value = 0.01;  // initial beta, g, u entries
};

struct TrainResult {
  ModelWeights model;
  int iterations = 0;
  double final_objective = 0.0;
  bool converged = false;  // step-size stop reached before max_iters
};

// Called once per iteration when tracing: (iter, full objective, |step|_inf).
using TrainTrace = std::function<void(int, double, double)>;

// Canonical hash of a training configuration; mixed with the seed so every
// distinct config trains on its own random stream.
std::uint64_t train_config_hash(const TrainConfig& config);

// Mini-batch Adam on the wave objective over the enhanced matrix. The feature
// map and the minibatch stream both derive from (config.seed, config hash),
// so a rerun with the same dataset and config reproduces the result exactly.
TrainResult train_wave_rvfl(const Dataset& train, const TrainConfig& config,
                            const TrainTrace& trace = {});

}  // namespace wavervfl
