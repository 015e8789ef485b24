#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include "json.hpp"
#include <string>
#include <utility>
#include <vector>

#include "wavervfl/normalization.hpp"

namespace wavervfl {

// Where a dataset came from and what was done to it.
struct Provenance {
  std::string source;
  nlohmann::json transforms = nlohmann::json::array();
};

// Binary classification dataset; labels are exactly -1 or +1.
struct Dataset {
  std::string name;
  Eigen::MatrixXd X;  // n x m
  Eigen::VectorXd Y;  // n
  std::vector<std::string> column_names;  // feature names; empty without a header
  std::string label_name;                 // label column name; empty without a header
  Provenance provenance;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index m() const { return X.cols(); }
};

struct CsvOptions {
  bool has_header = false;
  int label_column = -1;  // -1 selects the last column
};

// Reads a numeric CSV. Labels in {-1, +1} are kept as is; {0, 1} is remapped
// to {-1, +1}; anything else is rejected. Non-numeric cells, non-finite
// values, and ragged rows raise ParseError naming the file and line.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

// Reads a numeric CSV where every column is a feature (no label column).
Eigen::MatrixXd load_features_csv(const std::filesystem::path& path, bool has_header = false);

// Writes features plus label column in canonical form: shortest decimal
// representation that round-trips the double exactly. load_csv(save_csv(d))
// reproduces d bit for bit.
void save_csv(const Dataset& data, const std::filesystem::path& path);

// Sidecar JSON with source path and applied transforms.
void save_provenance(const Dataset& data, const std::filesystem::path& path);

// Throws std::invalid_argument unless data has >= 2 rows and both classes.
void require_trainable(const Dataset& data);

// Fits min-max on `train`, applies it to train and to every dataset in
// `others` (same stats throughout).
std::pair<Dataset, std::vector<Dataset>> normalize(const Dataset& train,
                                                   const std::vector<Dataset>& others);

// Stratification-free k-fold assignment: a seeded permutation of 0..n-1 dealt
// round-robin into k folds. Fold sizes differ by at most one.
struct FoldPlan {
  int k = 0;
  std::vector<int> assignments;  // assignments[i] = fold of sample i
  std::uint64_t seed = 0;
};

FoldPlan kfold_split(Eigen::Index n, int k, std::uint64_t seed);

// Flips the labels of round-half-up(fraction * n) distinct samples chosen
// uniformly. Applying the same (fraction, seed) twice restores the original
// labels. Flipped indices are recorded in the provenance.
Dataset inject_label_noise(const Dataset& data, double fraction, std::uint64_t seed);

// Adds N(0, (sigma_scale * sd_j)^2) noise to every feature j of
// round-half-up(fraction * n) distinct samples, where sd_j is the per-feature
// sample standard deviation of `data`. Labels are untouched.
Dataset inject_gaussian_noise(const Dataset& data, double fraction, double sigma_scale,
                              std::uint64_t seed);

}  // namespace wavervfl
