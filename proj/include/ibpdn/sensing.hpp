#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <ibpdn/types.hpp>

namespace ibpdn {

enum class EnsembleTag { Gaussian, Bernoulli, Identity, Custom };

std::string to_string(EnsembleTag tag);
EnsembleTag ensemble_from_string(const std::string& name);

/// Dense m x n measurement operator, optionally composed with an orthonormal
/// sparsity basis: the effective operator is matrix * basis.
class SensingOperator {
 public:
  explicit SensingOperator(Matrix matrix, EnsembleTag tag = EnsembleTag::Custom);
  SensingOperator(Matrix matrix, EnsembleTag tag, Matrix basis);

  Index rows() const { return matrix_.rows(); }
  Index cols() const { return matrix_.cols(); }
  const Matrix& matrix() const { return matrix_; }
  EnsembleTag ensemble() const { return ensemble_; }
  const std::optional<Matrix>& basis() const { return basis_; }

  Matrix effective() const { return basis_ ? Matrix(matrix_ * *basis_) : matrix_; }

 private:
  Matrix matrix_;
  EnsembleTag ensemble_;
  std::optional<Matrix> basis_;
};

/// gaussian: i.i.d. N(0, 1/m) so columns have unit expected squared norm;
/// bernoulli: +-1/sqrt(m) equiprobable; identity: requires m == n.
/// Deterministic per seed.
SensingOperator make_ensemble(Index m, Index n, EnsembleTag tag, std::uint64_t seed);

struct Measurement {
  Vector y;
  double epsilon = 0.0;
  double noise_norm = 0.0;  // actual ||noise||_2, always <= epsilon
};

/// y = Phi x + noise with ||noise||_2 drawn uniformly in [0, epsilon] and a
/// uniformly random direction. Deterministic per seed.
Measurement measure(const SensingOperator& phi, const Vector& x, double epsilon,
                    std::uint64_t seed);

}  // namespace ibpdn
