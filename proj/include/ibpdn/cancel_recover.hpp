#pragma once

#include <ibpdn/numerics.hpp>
#include <ibpdn/signals.hpp>
#include <ibpdn/solver.hpp>
#include <ibpdn/types.hpp>

namespace ibpdn {

/// Cancel-then-recover working set for a known support T:
/// omega = Phi restricted to the T columns, p_perp the orthogonal projector
/// onto the complement of range(omega), phi_tilde = p_perp * Phi (whose T
/// columns vanish up to roundoff).
struct CtrProblem {
  SupportSet t_set;
  Matrix omega;
  Matrix p_perp;
  Matrix phi_tilde;
};

CtrProblem build_ctr(const Matrix& phi, const SupportSet& t_set,
                     double rank_tolerance = kDefaultRankTolerance);

/// Removes the known-support interference from the measurements:
/// y_tilde = p_perp * y.
Vector cancel(const CtrProblem& ctr, const Vector& y);

struct CtrRecovery {
  /// l1-minimal reconstruction of the unknown part; its T coordinates are
  /// exactly zero.
  Vector x_tilde;
  /// x_tilde completed with a least-squares re-estimate of the T
  /// coefficients from the uncancelled measurements. A convenience beyond
  /// the cancel-then-recover error guarantees, which cover T^c only.
  Vector x_full;
  RecoveryResult inner;
};

/// Recovers the unknown part from the cancelled measurements: equality basis
/// pursuit on (phi_tilde, y_tilde) when epsilon = 0, otherwise the denoise
/// variant with tube radius epsilon (valid since a projector cannot increase
/// the noise norm).
CtrRecovery recover_ctr(const CtrProblem& ctr, const Matrix& phi, const Vector& y, double epsilon,
                        const SolverConfig& config = {});

}  // namespace ibpdn
