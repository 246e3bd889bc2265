#include <ibpdn/cancel_recover.hpp>

#include <stdexcept>

namespace ibpdn {

CtrProblem build_ctr(const Matrix& phi, const SupportSet& t_set, double rank_tolerance) {
  if (t_set.ambient_dim() != phi.cols())
    throw std::invalid_argument("build_ctr: support dimension must equal columns of phi");
  if (t_set.is_empty())
    throw std::invalid_argument("build_ctr: empty known support; solve basis pursuit directly");
  if (t_set.size() >= phi.rows())
    throw std::invalid_argument("build_ctr: known support must be smaller than the measurement count");

  Matrix omega(phi.rows(), t_set.size());
  for (Index j = 0; j < t_set.size(); ++j)
    omega.col(j) = phi.col(t_set.indices()[static_cast<std::size_t>(j)]);

  CtrProblem ctr{t_set, std::move(omega), {}, {}};
  ctr.p_perp = nullspace_projector(ctr.omega, rank_tolerance);
  ctr.phi_tilde = ctr.p_perp * phi;
  return ctr;
}

Vector cancel(const CtrProblem& ctr, const Vector& y) {
  if (y.size() != ctr.p_perp.rows()) throw std::invalid_argument("cancel: y length mismatch");
  return ctr.p_perp * y;
}

CtrRecovery recover_ctr(const CtrProblem& ctr, const Matrix& phi, const Vector& y, double epsilon,
                        const SolverConfig& config) {
  if (epsilon < 0.0) throw std::invalid_argument("recover_ctr: epsilon must be >= 0");
  const Vector y_tilde = cancel(ctr, y);

  CtrRecovery out;
  out.inner = epsilon == 0.0 ? solve_bp_equality(ctr.phi_tilde, y_tilde, config)
                             : solve_bpdn(ctr.phi_tilde, y_tilde, epsilon, config);

  out.x_tilde = out.inner.x_star;
  for (Index i : ctr.t_set.indices()) out.x_tilde[i] = 0.0;

  // Back-substitute the T coefficients by least squares on the residual.
  const Vector coef = least_squares(ctr.omega, Vector(y - phi * out.x_tilde), config.rank_tolerance);
  out.x_full = out.x_tilde;
  for (Index j = 0; j < ctr.t_set.size(); ++j)
    out.x_full[ctr.t_set.indices()[static_cast<std::size_t>(j)]] = coef[j];
  return out;
}

}  // namespace ibpdn
