#include <ibpdn/sensing.hpp>

#include <cmath>
#include <stdexcept>

#include <ibpdn/random.hpp>

namespace ibpdn {

std::string to_string(EnsembleTag tag) {
  switch (tag) {
    case EnsembleTag::Gaussian: return "gaussian";
    case EnsembleTag::Bernoulli: return "bernoulli";
    case EnsembleTag::Identity: return "identity";
    case EnsembleTag::Custom: return "custom";
  }
  return "custom";
}

EnsembleTag ensemble_from_string(const std::string& name) {
  if (name == "gaussian") return EnsembleTag::Gaussian;
  if (name == "bernoulli") return EnsembleTag::Bernoulli;
  if (name == "identity") return EnsembleTag::Identity;
  if (name == "custom") return EnsembleTag::Custom;
  throw std::invalid_argument("unknown ensemble: " + name);
}

SensingOperator::SensingOperator(Matrix matrix, EnsembleTag tag)
    : matrix_(std::move(matrix)), ensemble_(tag) {
  if (matrix_.rows() < 1 || matrix_.cols() < 1)
    throw std::invalid_argument("SensingOperator: matrix must be nonempty");
  if (!matrix_.allFinite())
    throw std::invalid_argument("SensingOperator: matrix has non-finite entries");
}

SensingOperator::SensingOperator(Matrix matrix, EnsembleTag tag, Matrix basis)
    : SensingOperator(std::move(matrix), tag) {
  if (basis.rows() != matrix_.cols() || basis.cols() != matrix_.cols())
    throw std::invalid_argument("SensingOperator: basis must be n x n");
  Matrix gram = basis.transpose() * basis;
  gram.diagonal().array() -= 1.0;
  if (gram.cwiseAbs().maxCoeff() >= 1e-8)
    throw std::invalid_argument("SensingOperator: basis is not orthonormal");
  basis_ = std::move(basis);
}

SensingOperator make_ensemble(Index m, Index n, EnsembleTag tag, std::uint64_t seed) {
  if (m < 1 || n < 1) throw std::invalid_argument("make_ensemble: dimensions must be positive");
  Rng rng(seed);
  Matrix a(m, n);
  switch (tag) {
    case EnsembleTag::Gaussian: {
      const double scale = 1.0 / std::sqrt(static_cast<double>(m));
      for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i) a(i, j) = scale * rng.normal();
      break;
    }
    case EnsembleTag::Bernoulli: {
      const double scale = 1.0 / std::sqrt(static_cast<double>(m));
      for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < m; ++i) a(i, j) = scale * rng.sign();
      break;
    }
    case EnsembleTag::Identity:
      if (m != n) throw std::invalid_argument("make_ensemble: identity requires m == n");
      a = Matrix::Identity(m, n);
      break;
    case EnsembleTag::Custom:
      throw std::invalid_argument("make_ensemble: custom matrices are constructed directly");
  }
  return SensingOperator(std::move(a), tag);
}

Measurement measure(const SensingOperator& phi, const Vector& x, double epsilon,
                    std::uint64_t seed) {
  if (x.size() != phi.cols())
    throw std::invalid_argument("measure: signal length must equal operator columns");
  if (epsilon < 0.0) throw std::invalid_argument("measure: epsilon must be >= 0");

  Measurement out;
  out.epsilon = epsilon;
  out.y = phi.effective() * x;
  if (epsilon > 0.0) {
    Rng rng(seed);
    Vector direction = rng.normal_vector(phi.rows());
    const double norm = direction.norm();
    const double radius = rng.uniform(0.0, epsilon);
    if (norm > 0.0 && radius > 0.0) {
      out.y += direction * (radius / norm);
      out.noise_norm = radius;
    }
  }
  return out;
}

}  // namespace ibpdn
