#include <ibpdn/numerics.hpp>

#include <Eigen/SVD>

#include <stdexcept>

namespace ibpdn {

namespace {

void check_input(const Matrix& a, double rank_tolerance) {
  if (a.rows() < 1 || a.cols() < 1) throw std::invalid_argument("svd: matrix must be nonempty");
  if (!a.allFinite()) throw std::invalid_argument("svd: matrix has non-finite entries");
  if (rank_tolerance < 0.0) throw std::invalid_argument("svd: rank_tolerance must be >= 0");
}

}  // namespace

SvdFactorization svd(const Matrix& a, double rank_tolerance) {
  check_input(a, rank_tolerance);
  Eigen::JacobiSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) throw NumericalError("svd: Jacobi iteration did not converge");

  const Vector& sv = dec.singularValues();
  const double largest = sv.size() > 0 ? sv[0] : 0.0;
  const double cutoff = rank_tolerance * largest;
  Index rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff && sv[rank] > 0.0) ++rank;

  SvdFactorization f;
  f.u = dec.matrixU().leftCols(rank);
  f.singular_values = sv.head(rank);
  f.vt = dec.matrixV().leftCols(rank).transpose();
  f.rank_tolerance = rank_tolerance;
  return f;
}

Vector singular_values(const Matrix& a) {
  check_input(a, 0.0);
  Eigen::JacobiSVD<Matrix> dec(a);
  if (dec.info() != Eigen::Success) throw NumericalError("svd: Jacobi iteration did not converge");
  return dec.singularValues();
}

Matrix pseudoinverse(const SvdFactorization& f) {
  return f.vt.transpose() * f.singular_values.cwiseInverse().asDiagonal() * f.u.transpose();
}

Matrix pseudoinverse(const Matrix& a, double rank_tolerance) {
  return pseudoinverse(svd(a, rank_tolerance));
}

Matrix range_projector(const Matrix& a, double rank_tolerance) {
  const SvdFactorization f = svd(a, rank_tolerance);
  return f.u * f.u.transpose();
}

Matrix nullspace_projector(const Matrix& a, double rank_tolerance) {
  Matrix p = -range_projector(a, rank_tolerance);
  p.diagonal().array() += 1.0;
  return p;
}

Vector least_squares(const SvdFactorization& f, const Vector& b) {
  if (b.size() != f.rows()) throw std::invalid_argument("least_squares: b length must equal rows of a");
  return f.vt.transpose() * (f.singular_values.cwiseInverse().asDiagonal() * (f.u.transpose() * b));
}

Vector least_squares(const Matrix& a, const Vector& b, double rank_tolerance) {
  return least_squares(svd(a, rank_tolerance), b);
}

}  // namespace ibpdn
