#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <ibpdn/random.hpp>
#include <ibpdn/types.hpp>

namespace ibpdn {

/// Sorted subset of {0, ..., ambient_dim - 1}. Indices are 0-based
/// throughout the library.
class SupportSet {
 public:
  SupportSet(std::vector<Index> indices, Index ambient_dim);

  static SupportSet empty(Index ambient_dim) { return SupportSet({}, ambient_dim); }
  static SupportSet full(Index ambient_dim);

  Index ambient_dim() const { return ambient_dim_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  bool is_empty() const { return indices_.empty(); }
  const std::vector<Index>& indices() const { return indices_; }

  bool contains(Index i) const;
  SupportSet complement() const;

 private:
  std::vector<Index> indices_;
  Index ambient_dim_;
};

/// Keeps x on s, zero elsewhere.
Vector restrict_to(const Vector& x, const SupportSet& s);

/// Keeps the k largest-magnitude entries, zeroing the rest. Magnitude ties
/// are broken in favor of the lowest index.
Vector best_k_term(const Vector& x, Index k);

/// Scaled l1 tail of r after removing its k largest entries:
/// k^{-1/2} * ||r - best_k_term(r, k)||_1. Zero iff r is k-sparse.
double compressibility_error(const Vector& r, Index k);

/// Indices i with |x_i| > tau.
SupportSet support_from_threshold(const Vector& x, double tau);

struct SignalModel {
  enum class Kind { ExactSparse, PowerLaw };
  Kind kind = Kind::ExactSparse;
  double exponent = 1.0;

  static SignalModel exact_sparse() { return {Kind::ExactSparse, 0.0}; }
  static SignalModel power_law(double exponent);
};

/// Test-signal generation, deterministic per seed.
///
/// exact_sparse: k_true nonzeros on a random support, magnitudes uniform in
/// [1, 2] with random signs. power_law: magnitudes i^{-exponent} (i = 1..n)
/// spread over a random permutation with random signs. The returned support
/// is supp(x) for exact_sparse and the k_true largest entries for power_law.
std::pair<Vector, SupportSet> generate_signal(Index n, Index k_true, const SignalModel& model,
                                              std::uint64_t seed);
std::pair<Vector, SupportSet> generate_signal(Index n, Index k_true, const SignalModel& model,
                                              Rng& rng);

/// Partially correct known support: n_good indices drawn from true_support
/// plus n_spurious drawn outside it.
SupportSet make_known_support(const SupportSet& true_support, Index n_good, Index n_spurious,
                              Rng& rng);

}  // namespace ibpdn
