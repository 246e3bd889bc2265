#pragma once

#include <cstdint>
#include <vector>

#include <ibpdn/types.hpp>

#include <random>

namespace ibpdn {

/// Deterministic random source. The engine is std::mt19937_64 (its output
/// sequence is fixed by the standard) and every distribution below is built
/// from raw engine words with explicit arithmetic, so the same seed yields
/// bit-identical draws on any platform. Gaussians come from Box-Muller on
/// 53-bit uniforms; no std:: distribution objects are used anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller; draws are cached in pairs.
  double normal();

  /// Random sign, +1 or -1 equiprobable.
  double sign() { return (engine_() & 1u) ? 1.0 : -1.0; }

  /// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
  Index uniform_index(Index n);

  /// k distinct indices from [0, n), returned sorted ascending.
  std::vector<Index> sample_without_replacement(Index n, Index k);

  /// Fisher-Yates permutation of [0, n).
  std::vector<Index> permutation(Index n);

  Vector normal_vector(Index n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Decorrelated child seed for trial `index` of a seeded run (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace ibpdn
