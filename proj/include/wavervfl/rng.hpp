#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace wavervfl {

// Deterministic random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard, and every mapping below is defined
// directly on the raw 64-bit outputs. Identical seeds therefore produce
// identical doubles on every platform and compiler.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution: (x >> 11) * 2^-53.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform on [-1, 1].
  double uniform_sym() { return 2.0 * uniform01() - 1.0; }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_open01() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller, cosine branch only.
  // Consumes exactly two raw draws per call.
  double gaussian();

  // Uniform integer on [0, bound) via multiply-shift.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

// Combines a base seed with a salt (splitmix64 finalizer). Chainable:
// mix_seed(mix_seed(seed, a), b) derives a stream keyed by (a, b).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

// FNV-1a over a byte buffer; used to hash canonical config encodings.
std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull);

// First s entries of a partial Fisher-Yates shuffle of 0..n-1: s distinct
// indices, uniform over subsets, in shuffle order.
std::vector<int> sample_without_replacement(int n, int s, Rng& rng);

}  // namespace wavervfl
