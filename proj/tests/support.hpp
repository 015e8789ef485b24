#pragma once

#include <unistd.h>

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <string>

#include "wavervfl/dataset.hpp"
#include "wavervfl/rng.hpp"

namespace test_support {

// Two spherical Gaussians at +-(sep/2)/sqrt(m) per coordinate, unit variance,
// alternating labels. Separable with a wide margin at the default sep.
inline wavervfl::Dataset two_gaussians(int n, int m, std::uint64_t seed, double sep = 8.0) {
  wavervfl::Dataset data;
  data.name = "two-gaussians";
  data.X.resize(n, m);
  data.Y.resize(n);
  const double c = 0.5 * sep / std::sqrt(static_cast<double>(m));
  wavervfl::Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const double label = i % 2 == 0 ? 1.0 : -1.0;
    data.Y(i) = label;
    for (int j = 0; j < m; ++j) data.X(i, j) = label * c + rng.gaussian();
  }
  return data;
}

// Fresh unique directory under the system temp root.
inline std::filesystem::path make_temp_dir(const std::string& tag) {
  static std::uint64_t counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, wavervfl::Rng& rng,
                                     double scale = 1.0) {
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = scale * rng.uniform_sym();
  return M;
}

inline Eigen::VectorXd random_vector(Eigen::Index size, wavervfl::Rng& rng, double scale = 1.0) {
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = scale * rng.uniform_sym();
  return v;
}

}  // namespace test_support
