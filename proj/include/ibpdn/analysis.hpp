#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <ibpdn/sensing.hpp>
#include <ibpdn/signals.hpp>
#include <ibpdn/types.hpp>

namespace ibpdn {

enum class RipMethod { ExactEnumeration, MonteCarlo };

std::string to_string(RipMethod method);
RipMethod rip_method_from_string(const std::string& name);

/// Restricted isometry radius of order q. Exact enumeration visits every
/// q-column submatrix; Monte Carlo visits a seeded sample and therefore only
/// lower-bounds the radius. A radius >= 1 means the matrix fails the
/// isometry property at this order; the computed value is reported as-is
/// with `saturated` set.
struct RipEstimate {
  Index order_q = 0;
  double radius = 0.0;
  bool saturated = false;
  RipMethod method = RipMethod::ExactEnumeration;
  int samples = 0;  // 0 for exact enumeration
  bool is_lower_bound = false;
};

/// Guard for the exact mode: C(n, q) support sets at most.
inline constexpr std::uint64_t kMaxEnumeratedSupports = 1'000'000;

/// Number of q-subsets, saturating at kMaxEnumeratedSupports + 1.
std::uint64_t support_count(Index n, Index q);

RipEstimate rip_radius(const Matrix& phi, Index q, RipMethod method, std::uint64_t seed = 0,
                       int samples = 5000);
RipEstimate rip_radius(const SensingOperator& phi, Index q, RipMethod method,
                       std::uint64_t seed = 0, int samples = 5000);

/// Interaction constant sqrt(delta_{s+2k}^2 + delta_{2k}^2).
double mu_sk(double delta_s2k, double delta_2k);

/// Stability constants of the l2-l1 instance-optimality bound
///   ||x - x*||_2 <= C epsilon + D e0(r; k).
/// C and D are present only when delta_2k^2 + 2 delta_{s+2k} < 1 (the
/// denominator 1 - delta_{s+2k} - mu is positive exactly then).
/// delta_prime / d_tilde are the cancel-then-recover companions, filled by
/// with_ctr_constants.
struct BoundReport {
  double delta_2k = 0.0;
  double delta_s2k = 0.0;
  double mu = 0.0;
  bool condition_ok = false;
  std::optional<double> c_const;
  std::optional<double> d_const;
  std::optional<double> delta_prime;
  std::optional<double> d_tilde;
};

BoundReport stability_constants(double delta_s2k, double delta_2k);

/// Cancel-then-recover constants: delta' = delta/(1 - delta), and
/// D_tilde = 2 (1 + (sqrt(2)-1) delta') / (1 - (sqrt(2)+1) delta'),
/// defined only when delta' < sqrt(2) - 1, i.e. delta < (sqrt(2)-1)/sqrt(2).
struct CtrConstants {
  double delta_prime = 0.0;
  std::optional<double> d_tilde;
};

CtrConstants ctr_constants(double delta_s2k);

BoundReport with_ctr_constants(BoundReport report);

struct BoundCheck {
  bool pass = false;
  double lhs = 0.0;     // ||x - x_star||_2
  double rhs = 0.0;     // C epsilon + D e0(r; k)
  double margin = 0.0;  // rhs - lhs
  double e0 = 0.0;
};

/// Evaluates the instance-optimality bound on a concrete recovery, with
/// r = x - x_T. Requires report.condition_ok.
BoundCheck verify_bound(const Vector& x, const Vector& x_star, double epsilon,
                        const SupportSet& t_set, Index k, const BoundReport& report);

}  // namespace ibpdn
