#pragma once

#include <optional>

#include <ibpdn/numerics.hpp>
#include <ibpdn/sensing.hpp>
#include <ibpdn/signals.hpp>
#include <ibpdn/types.hpp>

namespace ibpdn {

struct SolverConfig {
  /// Soft-threshold scale. Unset means auto: the median of |pinv(Phi) y|
  /// outside the known support, floored at 1e-6.
  std::optional<double> gamma;
  /// Relaxation, must stay in (0, 2).
  double alpha = 1.0;
  int max_iters = 20000;
  /// Stop when ||u_{t+1} - u_t|| / max(||u_t||, 1) drops below this.
  double tolerance = 1e-9;
  double rank_tolerance = kDefaultRankTolerance;
};

struct RecoveryResult {
  Vector x_star;
  int iterations = 0;
  bool converged = false;
  double final_residual = 0.0;  // ||y - Phi x*||_2
  double objective = 0.0;       // ||x* restricted outside T||_1
  double iterate_change = 0.0;  // last relative iterate change
};

/// Soft-thresholding that leaves the known-support coordinates untouched:
/// out_i = sign(z_i) max(|z_i| - gamma, 0) outside t_set, out_i = z_i on it.
Vector prox_l1_outside(const Vector& z, const SupportSet& t_set, double gamma);

/// Plain component-wise soft-thresholding.
Vector soft_threshold(const Vector& z, double gamma);

struct TubeProjection {
  Vector point;
  double residual = 0.0;  // ||y - Phi point||_2
  /// False only when the constraint set is empty (epsilon below the
  /// minimum achievable residual); the point is then the minimum-residual
  /// projection instead.
  bool feasible = true;
};

/// Orthogonal projection onto {v : ||y - Phi v||_2 <= epsilon}.
///
/// A feasible input is returned unchanged. For epsilon = 0 this is the
/// affine projection u + pinv(Phi)(y - Phi u). Otherwise the Lagrange
/// multiplier solves the scalar secular equation in the SVD basis, by
/// safeguarded Newton/bisection to 1e-12 relative accuracy.
TubeProjection project_tube(const Vector& u, const SvdFactorization& phi_svd, const Vector& y,
                            double epsilon);
TubeProjection project_tube(const Vector& u, const Matrix& phi, const Vector& y, double epsilon,
                            double rank_tolerance = kDefaultRankTolerance);

/// Douglas-Rachford solve of
///   min ||u_{T^c}||_1  s.t.  ||y - Phi u||_2 <= epsilon
/// iterating u <- u + alpha (S_gamma(2 P(u) - u) - P(u)) from u0 = pinv(Phi) y,
/// where P is the tube projection and S_gamma the thresholding outside T;
/// the returned point is the tube projection of the final iterate.
RecoveryResult solve_ibpdn(const Matrix& phi, const Vector& y, double epsilon,
                           const SupportSet& t_set, const SolverConfig& config = {});
RecoveryResult solve_ibpdn(const SensingOperator& phi, const Vector& y, double epsilon,
                           const SupportSet& t_set, const SolverConfig& config = {});

/// Basis pursuit denoise: the same scheme with the threshold applied to
/// every coordinate (no known-support branch anywhere in the code path).
RecoveryResult solve_bpdn(const Matrix& phi, const Vector& y, double epsilon,
                          const SolverConfig& config = {});

/// Equality-constrained basis pursuit min ||u||_1 s.t. a u = y_tilde, via the
/// same scheme with the affine projection v + pinv(a)(y_tilde - a v). Intended
/// for rank-deficient a; y_tilde must lie in the range of a.
RecoveryResult solve_bp_equality(const Matrix& a, const Vector& y_tilde,
                                 const SolverConfig& config = {});

struct OptimalityCertificate {
  bool pass = false;
  double lambda = 0.0;           // fitted multiplier of the fidelity constraint
  double worst_violation = 0.0;  // max of the three condition violations
  double known_violation = 0.0;  // max |g_i| over T
  double sign_violation = 0.0;   // max |g_i - sign(x_i)| over active coordinates
  double box_violation = 0.0;    // max (|g_i| - 1)+ over inactive T^c coordinates
  double residual = 0.0;
};

/// First-order optimality audit at x_star: fits lambda >= 0 by least squares
/// on the active sign pattern and checks that g = lambda Phi^T (y - Phi x_star)
/// is a subgradient of the objective at x_star, within dual_tol. Throws if
/// x_star is infeasible.
OptimalityCertificate check_optimality(const Vector& x_star, const Matrix& phi, const Vector& y,
                                       double epsilon, const SupportSet& t_set, double dual_tol);

}  // namespace ibpdn
