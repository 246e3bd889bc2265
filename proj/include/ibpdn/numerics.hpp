#pragma once

#include <ibpdn/types.hpp>

namespace ibpdn {

/// Singular values below rank_tolerance * sigma_max are treated as zero.
/// The default suits operators that are rank-deficient by construction,
/// e.g. a sensing matrix multiplied by a nullspace projector.
inline constexpr double kDefaultRankTolerance = 1e-10;

/// Thin SVD truncated at a relative rank tolerance: u is m x r with
/// orthonormal columns, vt is r x n with orthonormal rows, and the kept
/// singular values are nonincreasing with sigma_i > rank_tolerance * sigma_max.
struct SvdFactorization {
  Matrix u;
  Vector singular_values;
  Matrix vt;
  double rank_tolerance = kDefaultRankTolerance;

  Index rank() const { return singular_values.size(); }
  Index rows() const { return u.rows(); }
  Index cols() const { return vt.cols(); }
  Matrix reconstruct() const { return u * singular_values.asDiagonal() * vt; }
};

SvdFactorization svd(const Matrix& a, double rank_tolerance = kDefaultRankTolerance);

/// All min(m, n) singular values, nonincreasing, no truncation.
Vector singular_values(const Matrix& a);

/// Moore-Penrose pseudoinverse with rank truncation.
Matrix pseudoinverse(const Matrix& a, double rank_tolerance = kDefaultRankTolerance);
Matrix pseudoinverse(const SvdFactorization& f);

/// Orthogonal projector onto the column space of a.
Matrix range_projector(const Matrix& a, double rank_tolerance = kDefaultRankTolerance);

/// Orthogonal projector onto the orthogonal complement of the column space
/// of a, i.e. I - range_projector(a).
Matrix nullspace_projector(const Matrix& a, double rank_tolerance = kDefaultRankTolerance);

/// Minimum-norm least-squares solution of a x ~= b.
Vector least_squares(const Matrix& a, const Vector& b, double rank_tolerance = kDefaultRankTolerance);
Vector least_squares(const SvdFactorization& f, const Vector& b);

}  // namespace ibpdn
