// Acceptance gate: one line per criterion, "criterion N PASS|FAIL <name>".
// Each criterion is also a doctest case so the suite fails loudly in ctest.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "support.hpp"
#include "wavervfl/adam.hpp"
#include "wavervfl/closed_form.hpp"
#include "wavervfl/eval.hpp"
#include "wavervfl/losses.hpp"

using namespace wavervfl;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int number, bool ok, const char* name) {
  std::printf("criterion %d %s %s\n", number, ok ? "PASS" : "FAIL", name);
  std::fflush(stdout);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(WAVE_RVFL_BIN) + " " + args).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// held-out split: first half train, second half test (labels alternate row by
// row, so both halves stay balanced)
std::pair<Dataset, Dataset> split_half(const Dataset& data) {
  const int cut = static_cast<int>(data.n()) / 2;
  std::vector<int> train_rows, test_rows;
  for (int i = 0; i < data.n(); ++i) (i < cut ? train_rows : test_rows).push_back(i);
  Dataset train, test;
  train.name = data.name + "-train";
  test.name = data.name + "-test";
  train.X = data.X(train_rows, Eigen::all);
  train.Y = data.Y(train_rows);
  test.X = data.X(test_rows, Eigen::all);
  test.Y = data.Y(test_rows);
  return {train, test};
}

}  // namespace

TEST_CASE("criterion 1: gradient matches finite differences") {
  const auto start = Clock::now();
  const auto grid = GridSpec::defaults();
  Rng rng(20260822);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(19));   // <= 20
    const int d = 2 + static_cast<int>(rng.below(9));    // m + N <= 10
    Eigen::MatrixXd Z(n, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) Z(i, j) = rng.uniform_sym();
    Eigen::VectorXd beta(d);
    for (int j = 0; j < d; ++j) beta(j) = 0.5 * rng.uniform_sym();
    Eigen::VectorXd Y(n);
    for (int i = 0; i < n; ++i) Y(i) = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    ObjectiveParams params;
    params.C = std::pow(10.0, static_cast<double>(rng.below(5)) - 2.0);
    params.wave.eta = grid.eta_values[rng.below(grid.eta_values.size())];
    params.wave.gamma = grid.gamma_values[rng.below(grid.gamma_values.size())];

    const Eigen::VectorXd grad = objective_gradient(beta, Z, Y, params);
    const double scale = std::max(1.0, grad.lpNorm<Eigen::Infinity>());
    const double h = 1e-5;
    for (int j = 0; j < d; ++j) {
      Eigen::VectorXd up = beta, down = beta;
      up(j) += h;
      down(j) -= h;
      const double fd = (objective(up, Z, Y, params) - objective(down, Z, Y, params)) / (2 * h);
      worst = std::max(worst, std::fabs(grad(j) - fd) / scale);
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst < 1e-6 && elapsed < 5.0;
  report(1, ok, "gradient-vs-finite-differences");
  CHECK(worst < 1e-6);
  CHECK(elapsed < 5.0);
}

TEST_CASE("criterion 2: wave loss zero point, bounds and large-gamma limit") {
  bool ok = true;
  const auto grid = GridSpec::defaults();
  for (int p = 0; p < 20; ++p) {
    WaveLossParams params;
    params.eta = grid.eta_values[static_cast<std::size_t>(p) % grid.eta_values.size()];
    params.gamma = grid.gamma_values[(static_cast<std::size_t>(p) * 3) % grid.gamma_values.size()];
    if (wave_loss(0.0, params) != 0.0) ok = false;
    const double bound = 1.0 / params.eta;
    for (int i = 0; i < 10000; ++i) {
      const double v = -20.0 + 40.0 * static_cast<double>(i) / 9999.0;
      const double loss = wave_loss(v, params);
      if (!(loss >= 0.0 && loss < bound)) {
        ok = false;
        break;
      }
    }
  }
  // pointwise limit as gamma grows: 1/eta on the positive side, 0 on the negative
  for (double eta : {0.1, 0.6, 1.0, 1.85}) {
    WaveLossParams big{eta, 200.0};
    for (double v : {0.5, 1.0, 2.0, 5.0}) {
      if (std::fabs(wave_loss(v, big) - 1.0 / eta) > 1e-6) ok = false;
      if (std::fabs(wave_loss(-v, big)) > 1e-6) ok = false;
    }
  }
  report(2, ok, "wave-loss-bounds-and-limit");
  CHECK(ok);
}

TEST_CASE("criterion 3: ridge branches agree and satisfy the normal equations") {
  Rng rng(314159);
  bool ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(11));  // <= 12
    const int d = 2 + static_cast<int>(rng.below(11));
    Eigen::MatrixXd Z(n, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) Z(i, j) = rng.uniform_sym();
    Eigen::VectorXd Y(n);
    for (int i = 0; i < n; ++i) Y(i) = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    const double C = std::pow(10.0, static_cast<double>(rng.below(5)) - 2.0);

    const Eigen::MatrixXd eye_n = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd eye_d = Eigen::MatrixXd::Identity(d, d);
    const Eigen::VectorXd dual =
        Z.transpose() * (Z * Z.transpose() + eye_n / C).ldlt().solve(Y);
    const Eigen::VectorXd primal =
        (Z.transpose() * Z + eye_d / C).ldlt().solve(Z.transpose() * Y);
    if ((dual - primal).lpNorm<Eigen::Infinity>() >= 1e-8) ok = false;

    const Eigen::VectorXd beta = solve_ridge(Z, Y, C);
    const Eigen::VectorXd residual =
        (Z.transpose() * Z + eye_d / C) * beta - Z.transpose() * Y;
    const double rhs = (Z.transpose() * Y).norm();
    if (residual.norm() > 1e-8 * (1.0 + rhs)) ok = false;
  }
  report(3, ok, "closed-form-branch-equivalence");
  CHECK(ok);
}

TEST_CASE("criterion 4: Adam worked step and constant-gradient step size") {
  AdamState state;
  state.g = Eigen::VectorXd::Constant(1, 0.01);
  state.u = Eigen::VectorXd::Constant(1, 0.01);
  const auto [s1, beta1] = adam_step(state, Eigen::VectorXd::Constant(1, 0.01),
                                     Eigen::VectorXd::Constant(1, 1.0));
  const bool step_ok = std::fabs(beta1(0) - 0.0067120314830512564) < 1e-9;

  AdamState run;
  run.g = Eigen::VectorXd::Zero(1);
  run.u = Eigen::VectorXd::Zero(1);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(1);
  const Eigen::VectorXd grad = Eigen::VectorXd::Constant(1, 3.0);
  double step = 0.0;
  for (int i = 0; i < 10000; ++i) {
    auto [next, b] = adam_step(run, beta, grad);
    step = std::fabs(b(0) - beta(0));
    run = next;
    beta = b;
  }
  const bool converged_ok = std::fabs(step - run.alpha) < 1e-3;
  report(4, step_ok && converged_ok, "adam-worked-example");
  CHECK(step_ok);
  CHECK(converged_ok);
}

TEST_CASE("criterion 5: fixture statistics reproduce the published table") {
  const auto start = Clock::now();
  const auto table =
      result_table_from_csv(std::filesystem::path(TEST_DATA_DIR) / "table1_fixture.csv");
  const auto ranks = average_ranks(table);
  const std::vector<double> expected = {5.2826, 4.6304, 5.2609, 5.7609,
                                        3.7391, 4.9348, 3.2391, 3.1522};
  bool ok = ranks.size() == expected.size();
  for (std::size_t j = 0; ok && j < expected.size(); ++j)
    ok = std::fabs(ranks[j] - expected[j]) < 0.1;
  const auto stats = friedman_test(ranks, static_cast<int>(table.datasets.size()),
                                   static_cast<int>(table.models.size()));
  ok = ok && std::fabs(stats.chi2_F - 26.7289) < 0.05;
  ok = ok && std::fabs(stats.F_F - 4.3795) < 0.05;
  const auto wtl = win_tie_loss(table);
  ok = ok && wtl[7][1].wins == 13 && wtl[7][1].ties == 3 && wtl[7][1].losses == 7;
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < 1.0;
  report(5, ok, "fixture-statistics");
  CHECK(ok);
  CHECK(elapsed < 1.0);
}

TEST_CASE("criterion 6: both learners separate the synthetic benchmark") {
  const auto start = Clock::now();
  const auto data = test_support::two_gaussians(400, 2, 2026);
  const auto [train, test] = split_half(data);

  TrainConfig cfg;  // stock settings: C=1, eta=1, gamma=1, N=23, alpha=0.01, sigmoid
  cfg.seed = 1;
  const auto wave = train_wave_rvfl(train, cfg);
  const double wave_acc = accuracy(predict(wave.model, test.X), test.Y);

  const auto map = init_feature_map(static_cast<int>(train.m()), cfg.hidden_dim,
                                    cfg.activation, 1);
  const auto rvfl = fit_rvfl(train, 1.0, map);
  const double rvfl_acc = accuracy(predict(rvfl, test.X), test.Y);

  const double elapsed = seconds_since(start);
  const bool ok = wave_acc >= 95.0 && rvfl_acc >= 95.0 && elapsed < 30.0;
  report(6, ok, "synthetic-separation");
  CHECK(wave_acc >= 95.0);
  CHECK(rvfl_acc >= 95.0);
  CHECK(elapsed < 30.0);
}

TEST_CASE("criterion 7: wave training shrugs off 20% label flips") {
  const auto start = Clock::now();
  double wave_sum = 0.0;
  double rvfl_sum = 0.0;
  const int seeds = 10;
  for (int s = 1; s <= seeds; ++s) {
    const auto data = test_support::two_gaussians(400, 2, 100 + s);
    const auto [clean_train, test] = split_half(data);
    const auto train = inject_label_noise(clean_train, 0.2, static_cast<std::uint64_t>(s));

    TrainConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(s);
    const auto wave = train_wave_rvfl(train, cfg);
    wave_sum += accuracy(predict(wave.model, test.X), test.Y);

    const auto map = init_feature_map(static_cast<int>(train.m()), cfg.hidden_dim,
                                      cfg.activation, static_cast<std::uint64_t>(s));
    rvfl_sum += accuracy(predict(fit_rvfl(train, 1.0, map), test.X), test.Y);
  }
  const double wave_mean = wave_sum / seeds;
  const double rvfl_mean = rvfl_sum / seeds;
  const double elapsed = seconds_since(start);
  const bool ok = wave_mean >= rvfl_mean - 1.0 && elapsed < 300.0;
  report(7, ok, "label-noise-robustness");
  MESSAGE("wave mean ", wave_mean, " vs rvfl mean ", rvfl_mean);
  CHECK(wave_mean >= rvfl_mean - 1.0);
  CHECK(elapsed < 300.0);
}

TEST_CASE("criterion 8: full-size training fits the time budget") {
  const auto data = test_support::two_gaussians(10000, 10, 7);
  TrainConfig cfg;
  cfg.hidden_dim = 100;
  cfg.batch_size = 256;
  cfg.max_iters = 1000;
  cfg.delta = 0.0;  // run every iteration
  const auto start = Clock::now();
  const auto result = train_wave_rvfl(data, cfg);
  const double elapsed = seconds_since(start);
  const bool ok = result.iterations == 1000 && elapsed < 10.0;
  report(8, ok, "training-scale");
  CHECK(result.iterations == 1000);
  CHECK(elapsed < 10.0);
}

TEST_CASE("criterion 9: benchmark output is byte-identical across runs and jobs") {
  const auto dir = test_support::make_temp_dir("acceptance-bench");
  const auto a = dir / "a.csv";
  const auto b = dir / "b.csv";
  save_csv(test_support::two_gaussians(60, 2, 2), a);
  save_csv(test_support::two_gaussians(60, 2, 4), b);
  const std::string grids =
      " --C-grid 1,100 --N-grid 3,13 --activation-grid 1,6 --eta-grid 1 --gamma-grid -1,1"
      " --alpha-grid 0.01";
  const std::string base = "benchmark --data " + a.string() + " --data " + b.string() +
                           " --k 3 --seed 5" + grids + " --out ";
  const auto out1 = dir / "run1";
  const auto out2 = dir / "run2";
  const auto out3 = dir / "run3";
  bool ok = run_cli(base + out1.string() + " --jobs 1 >/dev/null 2>&1") == 0;
  ok = run_cli(base + out2.string() + " --jobs 1 >/dev/null 2>&1") == 0 && ok;
  ok = run_cli(base + out3.string() + " --jobs 4 >/dev/null 2>&1") == 0 && ok;
  const auto j1 = slurp(out1 / "results.json");
  ok = ok && !j1.empty() && j1 == slurp(out2 / "results.json") &&
       j1 == slurp(out3 / "results.json");
  report(9, ok, "benchmark-determinism");
  CHECK(ok);
}
