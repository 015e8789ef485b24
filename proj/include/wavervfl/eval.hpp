#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include "json.hpp"
#include <optional>
#include <string>
#include <vector>

#include "wavervfl/adam.hpp"
#include "wavervfl/closed_form.hpp"
#include "wavervfl/dataset.hpp"
#include "wavervfl/model.hpp"

namespace wavervfl {

// Percent agreement between prediction and truth.
double accuracy(const Eigen::VectorXd& pred, const Eigen::VectorXd& truth);

// Hyperparameter search space. Defaults reproduce the benchmark grids.
struct GridSpec {
  std::vector<double> C_values;
  std::vector<double> eta_values;
  std::vector<double> gamma_values;
  std::vector<int> N_values;
  std::vector<int> activation_ids;
  std::vector<double> alpha_values;

  static GridSpec defaults();
};

// One grid cell. eta/gamma/alpha are set only for the wave-rvfl variant.
struct ModelConfig {
  Variant variant = Variant::Rvfl;
  double C = 1.0;
  int hidden_dim = 23;
  Activation activation = Activation::Sigmoid;
  std::optional<double> eta;
  std::optional<double> gamma;
  std::optional<double> alpha;
};

nlohmann::json model_config_to_json(const ModelConfig& config);

// Grid cells in deterministic order; closed-form variants ignore the
// eta/gamma/alpha axes.
std::vector<ModelConfig> enumerate_grid(const GridSpec& grid, Variant variant);

struct GridSearchResult {
  ModelConfig best;
  std::vector<double> fold_accuracies;  // valid folds of the best config
  std::vector<int> valid_folds;
  double mean = 0.0;
  double stddev = 0.0;
  FoldPlan folds;
  std::uint64_t seed = 0;
  std::size_t configs_evaluated = 0;
};

// k-fold CV over every grid cell: normalization is fit on each training
// portion, the held-out fold stays clean. Highest mean fold accuracy wins;
// ties break toward smaller C, then smaller hidden_dim, then grid order.
// Folds whose training portion holds a single class are excluded with a
// warning on stderr. `jobs` only distributes work; results are identical for
// any job count.
GridSearchResult cross_validated_grid_search(const Dataset& data, Variant variant,
                                             const GridSpec& grid, int k, std::uint64_t seed,
                                             int jobs = 1);

// Benchmark-style accuracy table: datasets down, models across.
struct ResultTable {
  std::vector<std::string> datasets;
  std::vector<std::string> models;
  Eigen::MatrixXd acc;     // P x q, percent
  Eigen::MatrixXd stddev;  // P x q
};

// Mean over datasets of each model's rank (1 = best, ties averaged).
std::vector<double> average_ranks(const ResultTable& table);

struct FriedmanResult {
  double chi2_F = 0.0;
  double F_F = 0.0;
};

// chi2_F = 12P/(q(q+1)) (sum R_j^2 - q(q+1)^2/4), F_F = (P-1)chi2_F/(P(q-1)-chi2_F).
// Throws DegenerateStatisticError when the F_F denominator is not positive.
FriedmanResult friedman_test(const std::vector<double>& avg_ranks, int P, int q);

struct WtlCounts {
  int wins = 0;
  int ties = 0;
  int losses = 0;
};

// Pairwise dataset counts; equality is judged on values rounded to 4 decimals.
std::vector<std::vector<WtlCounts>> win_tie_loss(const ResultTable& table);

struct PerturbationSpec {
  enum class Kind { LabelFlip, Gaussian };
  Kind kind = Kind::LabelFlip;
  std::vector<double> levels;  // fractions in [0, 1]
  double sigma_scale = 1.0;    // gaussian only
};

struct SweepResult {
  std::vector<double> levels;
  std::vector<std::string> variants;
  Eigen::MatrixXd acc;                  // levels x variants
  std::vector<double> variant_means;    // column averages
  std::vector<double> variant_ranks;    // mean per-level rank
};

// Robustness protocol: at each level, only the training portion of each fold
// is perturbed and the grid search is re-run per variant. Level 0 reproduces
// the unperturbed benchmark numbers exactly.
SweepResult robustness_sweep(const Dataset& data, const std::vector<Variant>& variants,
                             const PerturbationSpec& perturbation, const GridSpec& grid, int k,
                             std::uint64_t seed, int jobs = 1);

// Table 1-style CSV: header row of model names, one row per dataset with
// "acc±std" cells, trailing average-rank row.
void result_table_to_csv(const ResultTable& table, const std::filesystem::path& path);

// Reads the layout above (rank row optional; cells may be plain numbers).
ResultTable result_table_from_csv(const std::filesystem::path& path);

}  // namespace wavervfl
