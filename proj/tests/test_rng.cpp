#include <algorithm>
#include <set>

#include "doctest.h"
#include "wavervfl/rng.hpp"

using namespace wavervfl;

TEST_CASE("uniform01 stays in [0, 1) and is deterministic") {
  Rng a(42), b(42);
  for (int i = 0; i < 10000; ++i) {
    const double x = a.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(x == b.uniform01());
  }
}

TEST_CASE("uniform_sym covers [-1, 1]") {
  Rng rng(7);
  double lo = 1.0, hi = -1.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.uniform_sym();
    CHECK(x >= -1.0);
    CHECK(x <= 1.0);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(lo < -0.99);
  CHECK(hi > 0.99);
}

TEST_CASE("gaussian has roughly standard moments") {
  Rng rng(123);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.gaussian();
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::fabs(mean) < 0.02);
  CHECK(std::fabs(var - 1.0) < 0.03);
}

TEST_CASE("below is bounded and rejects zero") {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) CHECK(rng.below(17) < 17);
  CHECK_THROWS_AS(rng.below(0), std::invalid_argument);
}

TEST_CASE("mix_seed separates salts") {
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) != mix_seed(2, 0));
  CHECK(mix_seed(5, 3) == mix_seed(5, 3));
}

TEST_CASE("sample_without_replacement yields distinct in-range indices") {
  Rng rng(11);
  const auto idx = sample_without_replacement(100, 30, rng);
  CHECK(idx.size() == 30);
  std::set<int> seen(idx.begin(), idx.end());
  CHECK(seen.size() == 30);
  CHECK(*seen.begin() >= 0);
  CHECK(*seen.rbegin() < 100);
}

TEST_CASE("sample_without_replacement at s = n is a permutation") {
  Rng rng(13);
  const auto idx = sample_without_replacement(10, 10, rng);
  std::set<int> seen(idx.begin(), idx.end());
  CHECK(seen.size() == 10);
}

TEST_CASE("sample_without_replacement validates arguments") {
  Rng rng(1);
  CHECK_THROWS_AS(sample_without_replacement(5, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_without_replacement(5, 6, rng), std::invalid_argument);
}
