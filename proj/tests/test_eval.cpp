#include <cmath>
#include <fstream>

#include "doctest.h"
#include "support.hpp"
#include "wavervfl/errors.hpp"
#include "wavervfl/eval.hpp"

using namespace wavervfl;

namespace {

GridSpec tiny_grid() {
  GridSpec grid;
  grid.C_values = {1.0, 100.0};
  grid.N_values = {3, 13};
  grid.activation_ids = {1, 6};
  grid.eta_values = {1.0};
  grid.gamma_values = {-1.0, 1.0};
  grid.alpha_values = {0.01};
  return grid;
}

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

ResultTable table_from(std::initializer_list<std::initializer_list<double>> rows) {
  ResultTable table;
  const auto P = static_cast<Eigen::Index>(rows.size());
  const auto q = static_cast<Eigen::Index>(rows.begin()->size());
  table.acc.resize(P, q);
  table.stddev = Eigen::MatrixXd::Zero(P, q);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) table.acc(i, j++) = v;
    table.datasets.push_back("d" + std::to_string(i));
    ++i;
  }
  for (Eigen::Index j = 0; j < q; ++j) table.models.push_back("m" + std::to_string(j));
  return table;
}

ResultTable load_fixture() {
  return result_table_from_csv(std::filesystem::path(TEST_DATA_DIR) / "table1_fixture.csv");
}

}  // namespace

TEST_CASE("accuracy is the percentage of matching labels") {
  CHECK(accuracy(vec({1, -1, 1}), vec({1, 1, 1})) == doctest::Approx(66.6667).epsilon(1e-4));
  CHECK(accuracy(vec({1, -1}), vec({1, -1})) == 100.0);
  CHECK(accuracy(vec({1, -1}), vec({-1, 1})) == 0.0);
  CHECK_THROWS_AS(accuracy(Eigen::VectorXd(), Eigen::VectorXd()), std::invalid_argument);
  CHECK_THROWS_AS(accuracy(vec({1}), vec({1, 1})), std::invalid_argument);
}

TEST_CASE("default grid matches the benchmark axes") {
  const auto grid = GridSpec::defaults();
  CHECK(grid.C_values.size() == 11);
  CHECK(grid.C_values.front() == doctest::Approx(1e-5));
  CHECK(grid.C_values.back() == doctest::Approx(1e5));
  CHECK(grid.eta_values.size() == 8);
  CHECK(grid.eta_values.front() == doctest::Approx(0.1));
  CHECK(grid.eta_values.back() == doctest::Approx(1.85));
  CHECK(grid.gamma_values.size() == 15);
  CHECK(grid.gamma_values.front() == doctest::Approx(-2.0));
  CHECK(grid.gamma_values.back() == doctest::Approx(5.0));
  CHECK(grid.N_values.size() == 11);
  CHECK(grid.N_values.front() == 3);
  CHECK(grid.N_values.back() == 203);
  CHECK(grid.activation_ids.size() == 6);
  CHECK(grid.alpha_values.size() == 3);

  CHECK(enumerate_grid(grid, Variant::Rvfl).size() == 726);
  CHECK(enumerate_grid(grid, Variant::Elm).size() == 726);
  CHECK(enumerate_grid(grid, Variant::WaveRvfl).size() == 261360);
}

TEST_CASE("enumerate_grid orders cells deterministically and validates axes") {
  const auto grid = tiny_grid();
  const auto cells = enumerate_grid(grid, Variant::WaveRvfl);
  REQUIRE(cells.size() == 16);
  CHECK(cells[0].C == 1.0);
  CHECK(cells[0].hidden_dim == 3);
  CHECK(cells[0].activation == Activation::Sigmoid);
  CHECK(*cells[0].gamma == -1.0);
  CHECK(*cells[1].gamma == 1.0);  // innermost wave axis moves first among eta/gamma/alpha
  CHECK(cells[15].C == 100.0);
  CHECK(cells[15].hidden_dim == 13);
  CHECK(cells[15].activation == Activation::Relu);

  const auto closed = enumerate_grid(grid, Variant::Rvfl);
  REQUIRE(closed.size() == 8);
  CHECK_FALSE(closed[0].eta.has_value());

  GridSpec broken = grid;
  broken.C_values.clear();
  CHECK_THROWS_AS(enumerate_grid(broken, Variant::Rvfl), std::invalid_argument);
  GridSpec no_eta = grid;
  no_eta.eta_values.clear();
  CHECK_NOTHROW(enumerate_grid(no_eta, Variant::Rvfl));
  CHECK_THROWS_AS(enumerate_grid(no_eta, Variant::WaveRvfl), std::invalid_argument);
}

TEST_CASE("grid search is deterministic and independent of the job count") {
  const auto data = test_support::two_gaussians(80, 2, 77, 6.0);
  const auto grid = tiny_grid();
  for (Variant variant : {Variant::Rvfl, Variant::WaveRvfl}) {
    const auto a = cross_validated_grid_search(data, variant, grid, 5, 42, 1);
    const auto b = cross_validated_grid_search(data, variant, grid, 5, 42, 1);
    const auto c = cross_validated_grid_search(data, variant, grid, 5, 42, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.mean == c.mean);
    CHECK(a.fold_accuracies == b.fold_accuracies);
    CHECK(a.fold_accuracies == c.fold_accuracies);
    CHECK(a.best.C == c.best.C);
    CHECK(a.best.hidden_dim == c.best.hidden_dim);
    CHECK(a.best.activation == c.best.activation);
    CHECK(a.folds.assignments == c.folds.assignments);
    CHECK(a.configs_evaluated == (variant == Variant::WaveRvfl ? 16 : 8));
    CHECK(a.valid_folds.size() == 5);
    CHECK(a.mean >= 90.0);  // well-separated gaussians
  }
}

TEST_CASE("enlarging the grid never lowers the selected mean") {
  const auto data = test_support::two_gaussians(60, 2, 5, 3.0);
  GridSpec small = tiny_grid();
  small.C_values = {1.0};
  small.N_values = {3};
  small.activation_ids = {1};
  GridSpec big = tiny_grid();

  const auto small_result = cross_validated_grid_search(data, Variant::Rvfl, small, 4, 9);
  const auto big_result = cross_validated_grid_search(data, Variant::Rvfl, big, 4, 9);
  CHECK(big_result.mean >= small_result.mean);
  CHECK(big_result.configs_evaluated > small_result.configs_evaluated);
}

TEST_CASE("folds whose training slice is single-class are excluded") {
  Dataset data;
  data.name = "lopsided";
  data.X = Eigen::MatrixXd::Random(4, 2);
  data.Y = vec({1, 1, 1, -1});
  GridSpec grid = tiny_grid();
  grid.C_values = {1.0};
  grid.N_values = {3};
  grid.activation_ids = {1};
  const auto result = cross_validated_grid_search(data, Variant::Rvfl, grid, 4, 1);
  CHECK(result.valid_folds.size() == 3);
  CHECK(result.fold_accuracies.size() == 3);

  // two samples, two folds: each training slice is one class
  Dataset pair;
  pair.name = "pair";
  pair.X = Eigen::MatrixXd::Random(2, 2);
  pair.Y = vec({1, -1});
  CHECK_THROWS_AS(cross_validated_grid_search(pair, Variant::Rvfl, grid, 2, 1),
                  std::invalid_argument);
}

TEST_CASE("average_ranks handles ties and preserves the rank-sum identity") {
  const auto table = table_from({{90.0, 80.0, 70.0}});
  const auto ranks = average_ranks(table);
  CHECK(ranks == std::vector<double>{1.0, 2.0, 3.0});

  const auto tied = average_ranks(table_from({{85.0, 85.0}}));
  CHECK(tied == std::vector<double>{1.5, 1.5});

  const auto all_tied = average_ranks(table_from({{70.0, 70.0, 70.0}}));
  CHECK(all_tied == std::vector<double>{2.0, 2.0, 2.0});

  const auto multi = average_ranks(table_from({{90.0, 80.0, 70.0}, {70.0, 80.0, 90.0}}));
  CHECK(multi == std::vector<double>{2.0, 2.0, 2.0});

  const auto fixture = load_fixture();
  const auto fr = average_ranks(fixture);
  double total = 0.0;
  for (double r : fr) total += r;
  CHECK(total == doctest::Approx(8.0 * 9.0 / 2.0).epsilon(1e-12));
}

TEST_CASE("friedman_test matches a hand-computed example") {
  // two datasets, three models, ranks (1.5, 1.5, 3) in both
  const auto table = table_from({{90.0, 90.0, 80.0}, {95.0, 95.0, 70.0}});
  const auto ranks = average_ranks(table);
  CHECK(ranks == std::vector<double>{1.5, 1.5, 3.0});
  const auto result = friedman_test(ranks, 2, 3);
  CHECK(result.chi2_F == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(result.F_F == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("friedman_test reports the degenerate perfect-ordering case") {
  // q = 2, P = 3, one model always ahead: chi2_F = P, denominator 0
  const auto table = table_from({{90.0, 80.0}, {91.0, 81.0}, {92.0, 82.0}});
  const auto ranks = average_ranks(table);
  CHECK(ranks == std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(friedman_test(ranks, 3, 2), DegenerateStatisticError);

  CHECK_THROWS_AS(friedman_test({1.0, 2.0}, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(friedman_test({1.0}, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(friedman_test({1.0, 2.0, 3.0}, 3, 2), std::invalid_argument);
}

TEST_CASE("ranks are invariant under a constant accuracy shift") {
  auto table = table_from({{90.0, 80.0, 85.0}, {60.0, 75.0, 70.0}, {50.0, 55.0, 45.0}});
  const auto before = average_ranks(table);
  table.acc.array() += 3.25;
  CHECK(average_ranks(table) == before);
}

TEST_CASE("win_tie_loss is antisymmetric and exhaustive") {
  const auto table = table_from({{90.0, 80.0}, {70.0, 70.0}, {60.0, 65.0}, {50.0, 40.0}});
  const auto wtl = win_tie_loss(table);
  CHECK(wtl[0][1].wins == 2);
  CHECK(wtl[0][1].ties == 1);
  CHECK(wtl[0][1].losses == 1);
  CHECK(wtl[1][0].wins == wtl[0][1].losses);
  CHECK(wtl[1][0].losses == wtl[0][1].wins);
  CHECK(wtl[1][0].ties == wtl[0][1].ties);
  CHECK(wtl[0][0].ties == 4);
  CHECK(wtl[0][0].wins == 0);

  // equality after rounding to 4 decimals
  const auto close = win_tie_loss(table_from({{80.00001, 80.0}}));
  CHECK(close[0][1].ties == 1);
  const auto apart = win_tie_loss(table_from({{80.001, 80.0}}));
  CHECK(apart[0][1].wins == 1);
}

TEST_CASE("fixture table reproduces the published rank statistics") {
  const auto table = load_fixture();
  REQUIRE(table.datasets.size() == 23);
  REQUIRE(table.models.size() == 8);
  CHECK(table.models.front() == "RVFLwoDL");
  CHECK(table.models.back() == "Wave-RVFL");

  const auto ranks = average_ranks(table);
  const std::vector<double> expected = {5.2826, 4.6304, 5.2609, 5.7609,
                                        3.7391, 4.9348, 3.2391, 3.1522};
  REQUIRE(ranks.size() == expected.size());
  for (std::size_t j = 0; j < expected.size(); ++j)
    CHECK(std::fabs(ranks[j] - expected[j]) < 0.1);
  // the best average rank belongs to the last column
  for (std::size_t j = 0; j + 1 < ranks.size(); ++j) CHECK(ranks.back() <= ranks[j]);

  const auto stats = friedman_test(ranks, 23, 8);
  CHECK(std::fabs(stats.chi2_F - 26.7289) < 0.05);
  CHECK(std::fabs(stats.F_F - 4.3795) < 0.05);

  const auto wtl = win_tie_loss(table);
  CHECK(wtl[7][1].wins == 13);
  CHECK(wtl[7][1].ties == 3);
  CHECK(wtl[7][1].losses == 7);
}

TEST_CASE("robustness sweep at level zero reproduces the clean grid search") {
  const auto data = test_support::two_gaussians(60, 2, 21, 6.0);
  GridSpec grid = tiny_grid();
  grid.C_values = {1.0};
  grid.activation_ids = {1};
  PerturbationSpec spec;
  spec.kind = PerturbationSpec::Kind::LabelFlip;
  spec.levels = {0.0, 0.2};

  const std::vector<Variant> variants = {Variant::Rvfl, Variant::WaveRvfl};
  const auto sweep = robustness_sweep(data, variants, spec, grid, 4, 11);
  CHECK(sweep.acc.rows() == 2);
  CHECK(sweep.acc.cols() == 2);
  CHECK(sweep.variants == std::vector<std::string>{"rvfl", "wave-rvfl"});

  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    const auto clean = cross_validated_grid_search(data, variants[vi], grid, 4, 11);
    CHECK(sweep.acc(0, static_cast<Eigen::Index>(vi)) == clean.mean);
  }

  for (Eigen::Index vi = 0; vi < 2; ++vi)
    CHECK(sweep.variant_means[static_cast<std::size_t>(vi)] ==
          doctest::Approx(sweep.acc.col(vi).mean()).epsilon(1e-12));
  CHECK(sweep.variant_ranks.size() == 2);
  CHECK(sweep.variant_ranks[0] + sweep.variant_ranks[1] == doctest::Approx(3.0));

  PerturbationSpec bad = spec;
  bad.levels = {0.0, 1.5};
  CHECK_THROWS_AS(robustness_sweep(data, variants, bad, grid, 4, 11), std::invalid_argument);
}

TEST_CASE("gaussian sweep runs the feature-noise injector") {
  const auto data = test_support::two_gaussians(50, 2, 33, 6.0);
  GridSpec grid = tiny_grid();
  grid.C_values = {1.0};
  grid.N_values = {3};
  grid.activation_ids = {1};
  PerturbationSpec spec;
  spec.kind = PerturbationSpec::Kind::Gaussian;
  spec.levels = {0.0, 0.5};
  spec.sigma_scale = 0.5;
  const auto sweep = robustness_sweep(data, {Variant::Rvfl}, spec, grid, 4, 3);
  CHECK(sweep.acc.rows() == 2);
  CHECK(sweep.acc(0, 0) >= 90.0);
}

TEST_CASE("result table CSV round-trips through the benchmark layout") {
  ResultTable table;
  table.datasets = {"alpha", "beta"};
  table.models = {"rvfl", "elm", "wave-rvfl"};
  table.acc.resize(2, 3);
  table.acc << 90.1234, 85.5, 91.75, 70.0, 72.25, 74.3333;
  table.stddev.resize(2, 3);
  table.stddev << 1.5, 2.25, 0.75, 3.0, 2.5, 1.25;

  const auto dir = test_support::make_temp_dir("results");
  const auto path = dir / "results.csv";
  result_table_to_csv(table, path);

  {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "dataset,rvfl,elm,wave-rvfl");
    std::getline(in, line);
    CHECK(line == std::string("alpha,90.1234±1.5000,85.5000±2.2500,91.7500±0.7500"));
    std::getline(in, line);
    std::getline(in, line);
    CHECK(line.rfind("Average Rank,", 0) == 0);
  }

  const auto again = result_table_from_csv(path);
  CHECK(again.datasets == table.datasets);
  CHECK(again.models == table.models);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) {
      CHECK(again.acc(i, j) == doctest::Approx(table.acc(i, j)).epsilon(1e-9));
      CHECK(again.stddev(i, j) == doctest::Approx(table.stddev(i, j)).epsilon(1e-9));
    }

  CHECK_THROWS_AS(result_table_from_csv(dir / "absent.csv"), ParseError);
  const auto bad = dir / "bad.csv";
  std::ofstream(bad) << "dataset,a,b\nrow1,1.0\n";
  CHECK_THROWS_AS(result_table_from_csv(bad), ParseError);
}
