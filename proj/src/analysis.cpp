#include <ibpdn/analysis.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <ibpdn/numerics.hpp>
#include <ibpdn/random.hpp>

namespace ibpdn {

namespace {

double subset_deviation(const Matrix& phi, const std::vector<Index>& support) {
  const Index q = static_cast<Index>(support.size());
  Matrix sub(phi.rows(), q);
  for (Index j = 0; j < q; ++j) sub.col(j) = phi.col(support[static_cast<std::size_t>(j)]);
  const Vector sv = singular_values(sub);
  const double top = sv[0] * sv[0];
  const double bottom = q > phi.rows() ? 0.0 : sv[sv.size() - 1] * sv[sv.size() - 1];
  return std::max(top - 1.0, 1.0 - bottom);
}

bool next_combination(std::vector<Index>& c, Index n) {
  const Index q = static_cast<Index>(c.size());
  Index i = q - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - q + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (Index j = i + 1; j < q; ++j)
    c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

std::string to_string(RipMethod method) {
  return method == RipMethod::ExactEnumeration ? "exact_enumeration" : "monte_carlo";
}

RipMethod rip_method_from_string(const std::string& name) {
  if (name == "exact_enumeration" || name == "exact") return RipMethod::ExactEnumeration;
  if (name == "monte_carlo" || name == "mc") return RipMethod::MonteCarlo;
  throw std::invalid_argument("unknown RIP method: " + name);
}

std::uint64_t support_count(Index n, Index q) {
  if (q < 0 || q > n) return 0;
  std::uint64_t count = 1;
  for (Index i = 0; i < q; ++i) {
    // c(n, i+1) = c(n, i) * (n - i) / (i + 1), integer at every step
    count = count * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
    if (count > kMaxEnumeratedSupports) return kMaxEnumeratedSupports + 1;
  }
  return count;
}

RipEstimate rip_radius(const Matrix& phi, Index q, RipMethod method, std::uint64_t seed,
                       int samples) {
  const Index n = phi.cols();
  if (q < 1 || q > n) throw std::invalid_argument("rip_radius: need 1 <= q <= n");

  RipEstimate est;
  est.order_q = q;
  est.method = method;

  double worst = 0.0;
  if (method == RipMethod::ExactEnumeration) {
    if (support_count(n, q) > kMaxEnumeratedSupports)
      throw std::invalid_argument("rip_radius: too many supports to enumerate; use monte_carlo");
    std::vector<Index> support(static_cast<std::size_t>(q));
    for (Index i = 0; i < q; ++i) support[static_cast<std::size_t>(i)] = i;
    do {
      worst = std::max(worst, subset_deviation(phi, support));
    } while (next_combination(support, n));
    est.is_lower_bound = false;
    est.samples = 0;
  } else {
    if (samples < 1) throw std::invalid_argument("rip_radius: samples must be >= 1");
    // Draw all supports up front so the estimate depends only on the seed.
    Rng rng(seed);
    std::vector<std::vector<Index>> supports(static_cast<std::size_t>(samples));
    for (auto& s : supports) s = rng.sample_without_replacement(n, q);
    for (const auto& s : supports) worst = std::max(worst, subset_deviation(phi, s));
    est.is_lower_bound = true;
    est.samples = samples;
  }
  est.radius = worst;
  est.saturated = worst >= 1.0;
  return est;
}

RipEstimate rip_radius(const SensingOperator& phi, Index q, RipMethod method, std::uint64_t seed,
                       int samples) {
  return rip_radius(phi.effective(), q, method, seed, samples);
}

double mu_sk(double delta_s2k, double delta_2k) {
  if (delta_s2k < 0.0 || delta_s2k >= 1.0 || delta_2k < 0.0 || delta_2k >= 1.0)
    throw std::invalid_argument("mu_sk: radii must lie in [0, 1)");
  return std::sqrt(delta_s2k * delta_s2k + delta_2k * delta_2k);
}

BoundReport stability_constants(double delta_s2k, double delta_2k) {
  BoundReport report;
  report.delta_2k = delta_2k;
  report.delta_s2k = delta_s2k;
  report.mu = mu_sk(delta_s2k, delta_2k);
  report.condition_ok = delta_2k * delta_2k + 2.0 * delta_s2k < 1.0;
  if (report.condition_ok) {
    const double denom = 1.0 - delta_s2k - report.mu;
    report.c_const = 4.0 * std::sqrt(1.0 + delta_s2k) / denom;
    report.d_const = 2.0 * (1.0 + report.mu - delta_s2k) / denom;
  }
  return report;
}

CtrConstants ctr_constants(double delta_s2k) {
  if (delta_s2k < 0.0 || delta_s2k >= 1.0)
    throw std::invalid_argument("ctr_constants: radius must lie in [0, 1)");
  CtrConstants out;
  out.delta_prime = delta_s2k / (1.0 - delta_s2k);
  const double root2 = std::sqrt(2.0);
  if (out.delta_prime < root2 - 1.0) {
    out.d_tilde = 2.0 * (1.0 + (root2 - 1.0) * out.delta_prime) /
                  (1.0 - (root2 + 1.0) * out.delta_prime);
  }
  return out;
}

BoundReport with_ctr_constants(BoundReport report) {
  const CtrConstants c = ctr_constants(report.delta_s2k);
  report.delta_prime = c.delta_prime;
  report.d_tilde = c.d_tilde;
  return report;
}

BoundCheck verify_bound(const Vector& x, const Vector& x_star, double epsilon,
                        const SupportSet& t_set, Index k, const BoundReport& report) {
  if (!report.condition_ok)
    throw std::invalid_argument("verify_bound: bound requires condition_ok");
  if (k < 1) throw std::invalid_argument("verify_bound: k must be >= 1");
  if (x.size() != x_star.size() || t_set.ambient_dim() != x.size())
    throw std::invalid_argument("verify_bound: dimension mismatch");

  BoundCheck check;
  const Vector r = x - restrict_to(x, t_set);
  check.e0 = compressibility_error(r, k);
  check.lhs = (x - x_star).norm();
  check.rhs = *report.c_const * epsilon + *report.d_const * check.e0;
  check.margin = check.rhs - check.lhs;
  check.pass = check.margin >= 0.0;
  return check;
}

}  // namespace ibpdn
