// Acceptance suite: one pass/fail line per criterion, plus [SUPP] lines for
// supplementary demonstrations at a feasible geometry where a criterion's
// stated geometry admits no qualifying instances. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <ibpdn/analysis.hpp>
#include <ibpdn/cancel_recover.hpp>
#include <ibpdn/experiments.hpp>
#include <ibpdn/random.hpp>
#include <ibpdn/sensing.hpp>
#include <ibpdn/signals.hpp>
#include <ibpdn/solver.hpp>

#include "frames.hpp"

using namespace ibpdn;
using ibpdn::testing::conditioned_frame;
using ibpdn::testing::random_gaussian;
using ibpdn::testing::simplex_frame;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!pass) ++failures;
}

void supplementary(const std::string& detail) {
  std::printf("[SUPP]              %s\n", detail.c_str());
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct SolveRecord {
  Matrix phi;
  Vector y;
  double epsilon;
  SupportSet t_set;
  RecoveryResult result;
  std::string source;
};

// ---------------------------------------------------------------------------
// criterion 1: stability constants at the benchmark radii
void criterion_1() {
  const BoundReport r = stability_constants(0.2, 0.02);
  const bool pass = r.condition_ok && r.c_const && r.d_const && *r.c_const > 7.310 &&
                    *r.c_const < 7.320 && *r.d_const > 3.340 && *r.d_const < 3.350;
  report(1, pass,
         fmt("constants at (0.02, 0.2): C = %.6f in (7.310, 7.320), D = %.6f in (3.340, 3.350)",
             r.c_const.value_or(-1.0), r.d_const.value_or(-1.0)));
}

// criterion 2: with equal radii the condition reduces to d < sqrt(2) - 1
void criterion_2() {
  const double threshold = std::sqrt(2.0) - 1.0;
  int mismatches = 0;
  for (int i = 1; i <= 50; ++i) {
    const double d = i / 100.0;
    if (stability_constants(d, d).condition_ok != (d < threshold)) ++mismatches;
  }
  report(2, mismatches == 0,
         fmt("equal-radius condition matches d < sqrt(2)-1 over d = 0.01..0.50 (%d mismatches)",
             mismatches));
}

// criterion 3: noiseless exact recovery at n=128, m=64, k=16, T = 12 good + 2
// spurious, solved as a tube of radius 1e-9
std::vector<SolveRecord> criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  const Index n = 128, m = 64, k_true = 16;
  const double tube = 1e-9;
  std::vector<SolveRecord> records;
  int hits = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t ts = derive_seed(42, static_cast<std::uint64_t>(trial));
    const SensingOperator phi = make_ensemble(m, n, EnsembleTag::Gaussian, derive_seed(ts, 1));
    auto [x, supp] = generate_signal(n, k_true, SignalModel::exact_sparse(), derive_seed(ts, 2));
    Rng t_rng(derive_seed(ts, 3));
    const SupportSet t = make_known_support(supp, 12, 2, t_rng);
    const Vector y = phi.matrix() * x;
    const RecoveryResult res = solve_ibpdn(phi.matrix(), y, tube, t, {});
    if ((x - res.x_star).norm() / x.norm() < 1e-4) ++hits;
    records.push_back({phi.matrix(), y, tube, t, res, "criterion-3"});
  }
  report(3, hits >= 48,
         fmt("noiseless recovery (tube 1e-9): relative error < 1e-4 in %d/50 trials "
             "(need >= 48), %.1f s",
             hits, seconds_since(t0)));
  return records;
}

// certified instance set for criteria 4 and 8
struct CertifiedInstance {
  Matrix phi;
  BoundReport report;  // with CTR constants attached
};

std::vector<CertifiedInstance> certify_frames(Index m, Index n, int attempts,
                                              std::uint64_t seed_base, bool use_simplex,
                                              double* best_condition) {
  std::vector<CertifiedInstance> accepted;
  *best_condition = std::numeric_limits<double>::infinity();
  for (int a = 0; a < attempts; ++a) {
    const std::uint64_t seed = derive_seed(seed_base, static_cast<std::uint64_t>(a));
    const Matrix phi =
        use_simplex ? simplex_frame(n, seed, 0.006) : conditioned_frame(m, n, seed);
    const RipEstimate small = rip_radius(phi, 2, RipMethod::ExactEnumeration);
    const RipEstimate large = rip_radius(phi, 4, RipMethod::ExactEnumeration);
    if (small.saturated || large.saturated) continue;
    const double condition = small.radius * small.radius + 2.0 * large.radius;
    *best_condition = std::min(*best_condition, condition);
    const BoundReport report =
        with_ctr_constants(stability_constants(large.radius, small.radius));
    if (report.condition_ok) accepted.push_back({phi, report});
  }
  return accepted;
}

// one bound-verification trial on a certified frame: power-law signal, known
// support of two true indices, k = 1
struct BoundTrial {
  bool margin_ok;
  BoundCheck check;
  SolveRecord record;
};

BoundTrial bound_trial(const CertifiedInstance& inst, double epsilon, std::uint64_t seed) {
  const Index n = inst.phi.cols();
  auto [x, supp] = generate_signal(n, 3, SignalModel::power_law(1.5), derive_seed(seed, 1));
  Rng t_rng(derive_seed(seed, 2));
  const SupportSet t = make_known_support(supp, 2, 0, t_rng);

  Vector y = inst.phi * x;
  if (epsilon > 0.0) {
    Rng noise_rng(derive_seed(seed, 3));
    Vector direction = noise_rng.normal_vector(inst.phi.rows());
    y += direction * (noise_rng.uniform(0.0, epsilon) / direction.norm());
  }
  const RecoveryResult res = solve_ibpdn(inst.phi, y, epsilon, t, {});
  const BoundCheck check = verify_bound(x, res.x_star, epsilon, t, 1, inst.report);
  return {check.margin >= 0.0, check, {inst.phi, y, epsilon, t, res, "bound-trial"}};
}

// criterion 4: margin >= 0 under certified exact radii at n=14, m=10, s=2, k=1
std::vector<SolveRecord> criterion_4(const std::vector<CertifiedInstance>& certified,
                                     double best_condition) {
  std::vector<SolveRecord> records;
  if (certified.empty()) {
    report(4, false,
           fmt("bound verification at n=14, m=10: no generated matrix satisfies the "
               "condition (best delta_2k^2 + 2 delta_{s+2k} = %.3f over 40 conditioned "
               "frames; >= 1 means the bound does not apply)",
               best_condition));
    return records;
  }
  const std::vector<double> eps_grid = {0.0, 0.01, 0.1};
  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const CertifiedInstance& inst = certified[trial % certified.size()];
    const double eps = eps_grid[trial % eps_grid.size()];
    BoundTrial bt = bound_trial(inst, eps, derive_seed(101, static_cast<std::uint64_t>(trial)));
    if (bt.margin_ok) ++ok;
    records.push_back(std::move(bt.record));
  }
  report(4, ok == 100, fmt("bound margins >= 0 in %d/100 certified trials", ok));
  return records;
}

// criterion 5: empty known support coincides with the plain denoise path
std::vector<SolveRecord> criterion_5() {
  std::vector<SolveRecord> records;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(500, static_cast<std::uint64_t>(trial)));
    const Index m = 10, n = 24;
    const Matrix phi = random_gaussian(m, n, rng) / std::sqrt(static_cast<double>(m));
    Vector x = Vector::Zero(n);
    for (Index i : rng.sample_without_replacement(n, 3)) x[i] = rng.sign() * rng.uniform(1.0, 2.0);
    const double eps = trial % 2 == 0 ? 0.0 : 0.05;
    Vector y = phi * x;
    if (eps > 0.0) {
      Vector dir = rng.normal_vector(m);
      y += dir * (0.8 * eps / dir.norm());
    }
    const RecoveryResult with_t = solve_ibpdn(phi, y, eps, SupportSet::empty(n), {});
    const RecoveryResult plain = solve_bpdn(phi, y, eps, {});
    worst = std::max(worst, (with_t.x_star - plain.x_star).norm());
    records.push_back({phi, y, eps, SupportSet::empty(n), with_t, "criterion-5"});
  }
  report(5, worst < 1e-10,
         fmt("empty-T solve vs plain denoise solve: worst difference %.2e (< 1e-10)", worst));
  return records;
}

// criterion 6: optimality certificates on every converged solve above
void criterion_6(const std::vector<SolveRecord>& records) {
  int audited = 0, passed = 0;
  double worst = 0.0;
  std::string worst_source = "-";
  for (const SolveRecord& rec : records) {
    if (!rec.result.converged) continue;
    ++audited;
    const OptimalityCertificate cert =
        check_optimality(rec.result.x_star, rec.phi, rec.y, rec.epsilon, rec.t_set, 1e-5);
    if (cert.pass) {
      ++passed;
    } else if (cert.worst_violation > worst) {
      worst = cert.worst_violation;
      worst_source = rec.source;
    }
  }
  report(6, audited > 0 && passed == audited,
         fmt("certificates (dual_tol 1e-5) pass on %d/%d converged solves; worst violation "
             "%.2e (%s)",
             passed, audited, worst, worst_source.c_str()));
}

// criterion 7: projector and cancellation identities on random pairs
void criterion_7() {
  int ok = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng(derive_seed(700, static_cast<std::uint64_t>(trial)));
    const Index m = 4 + rng.uniform_index(7);
    const Index n = m + 2 + rng.uniform_index(7);
    const Index s = 1 + rng.uniform_index(m - 1);
    const Matrix phi = random_gaussian(m, n, rng) / std::sqrt(static_cast<double>(m));
    const SupportSet t(rng.sample_without_replacement(n, s), n);
    const CtrProblem ctr = build_ctr(phi, t);
    const Matrix p_range = Matrix::Identity(m, m) - ctr.p_perp;
    const Vector x = rng.normal_vector(n);
    const bool good =
        (ctr.p_perp * ctr.p_perp - ctr.p_perp).cwiseAbs().maxCoeff() < 1e-8 &&
        (ctr.p_perp - ctr.p_perp.transpose()).cwiseAbs().maxCoeff() < 1e-8 &&
        (p_range * p_range - p_range).cwiseAbs().maxCoeff() < 1e-8 &&
        (ctr.p_perp * ctr.omega).cwiseAbs().maxCoeff() < 1e-8 &&
        (ctr.phi_tilde * restrict_to(x, t)).norm() < 1e-8 * std::max(1.0, x.norm());
    if (good) ++ok;
  }
  report(7, ok == 50, fmt("projector/cancellation identities hold on %d/50 random pairs", ok));
}

// criterion 8: cancel-then-recover comparison on certified noiseless instances
void criterion_8(const std::vector<CertifiedInstance>& certified) {
  const double stable_cut = (std::sqrt(2.0) - 1.0) / std::sqrt(2.0);
  std::vector<const CertifiedInstance*> eligible;
  for (const CertifiedInstance& inst : certified)
    if (inst.report.delta_s2k < stable_cut && inst.report.d_tilde) eligible.push_back(&inst);

  if (eligible.empty()) {
    report(8, false,
           fmt("cancel-then-recover comparison: none of the %zu certified n=14, m=10 "
               "instances has delta_{s+2k} < (sqrt(2)-1)/sqrt(2) = %.4f, so the "
               "comparison bound does not apply",
               certified.size(), stable_cut));
    return;
  }

  int ok = 0, ordered = 0, total = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const CertifiedInstance& inst = *eligible[trial % eligible.size()];
    const std::uint64_t seed = derive_seed(800, static_cast<std::uint64_t>(trial));
    const Index n = inst.phi.cols();
    auto [x, supp] = generate_signal(n, 3, SignalModel::power_law(1.5), derive_seed(seed, 1));
    Rng t_rng(derive_seed(seed, 2));
    const SupportSet t = make_known_support(supp, 2, 0, t_rng);
    const Vector y = inst.phi * x;

    const RecoveryResult direct = solve_ibpdn(inst.phi, y, 0.0, t, {});
    const CtrProblem ctr = build_ctr(inst.phi, t);
    const CtrRecovery rec = recover_ctr(ctr, inst.phi, y, 0.0, {});

    const double e0 = compressibility_error(x - restrict_to(x, t), 1);
    const SupportSet outside = t.complement();
    const double err_direct_tc = (restrict_to(x, outside) - restrict_to(direct.x_star, outside)).norm();
    const double err_direct_full = (x - direct.x_star).norm();
    const double err_ctr_tc = (restrict_to(x, outside) - restrict_to(rec.x_tilde, outside)).norm();

    ++total;
    if (err_ctr_tc <= *inst.report.d_tilde * e0 && err_direct_full <= *inst.report.d_const * e0 &&
        err_direct_tc <= err_direct_full + 1e-12)
      ++ok;
    if (*inst.report.d_const < *inst.report.d_tilde) ++ordered;
  }
  report(8, ok == total && ordered == total,
         fmt("both recovery bounds hold in %d/%d trials; constant ordering D < D_tilde in "
             "%d/%d",
             ok, total, ordered, total));
}

// criterion 9: solver objective against a brute-force l1 oracle
double l1_oracle(const Matrix& a, const Vector& y, double feas_tol = 1e-9) {
  const Index n = a.cols();
  const Index max_support = std::min(a.rows(), n);
  double best = std::numeric_limits<double>::infinity();
  if (y.norm() <= feas_tol) return 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<Index> support;
    for (Index i = 0; i < n; ++i)
      if (mask & (1u << i)) support.push_back(i);
    if (static_cast<Index>(support.size()) > max_support) continue;
    Matrix sub(a.rows(), static_cast<Index>(support.size()));
    for (std::size_t j = 0; j < support.size(); ++j)
      sub.col(static_cast<Index>(j)) = a.col(support[j]);
    const Vector coef = sub.completeOrthogonalDecomposition().solve(y);
    if ((sub * coef - y).norm() <= feas_tol) best = std::min(best, coef.lpNorm<1>());
  }
  return best;
}

void criterion_9() {
  int ok = 0;
  double worst_gap = 0.0;
  SolverConfig config;
  config.tolerance = 1e-11;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(900, static_cast<std::uint64_t>(trial)));
    const Index n = 3 + rng.uniform_index(4);
    const Index m = 2 + rng.uniform_index(std::min<Index>(3, n - 1));
    const Matrix phi = random_gaussian(m, n, rng);
    Vector x0 = Vector::Zero(n);
    for (Index i : rng.sample_without_replacement(n, 1 + rng.uniform_index(2)))
      x0[i] = rng.sign() * rng.uniform(1.0, 2.0);
    const Vector y = phi * x0;
    const double oracle = l1_oracle(phi, y);
    const RecoveryResult res = solve_ibpdn(phi, y, 0.0, SupportSet::empty(n), config);
    const double gap = std::abs(res.objective - oracle);
    worst_gap = std::max(worst_gap, gap);
    if (gap <= 1e-6) ++ok;
  }
  report(9, ok == 20,
         fmt("solver objective matches the enumeration oracle in %d/20 instances (worst gap "
             "%.2e)",
             ok, worst_gap));
}

// criterion 10: restricted-isometry sanity
void criterion_10() {
  bool identity_ok = true;
  for (Index q = 1; q <= 8; ++q) {
    const RipEstimate est = rip_radius(Matrix::Identity(8, 8), q, RipMethod::ExactEnumeration);
    if (est.radius > 1e-12) identity_ok = false;
  }
  int mc_ok = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Rng rng(derive_seed(1000, static_cast<std::uint64_t>(trial)));
    const Matrix phi = random_gaussian(8, 12, rng) / std::sqrt(8.0);
    bool good = true;
    for (Index q : {Index{2}, Index{3}}) {
      const RipEstimate exact = rip_radius(phi, q, RipMethod::ExactEnumeration);
      const RipEstimate mc = rip_radius(phi, q, RipMethod::MonteCarlo, derive_seed(1100, trial), 60);
      if (mc.radius > exact.radius + 1e-14) good = false;
    }
    if (good) ++mc_ok;
  }
  report(10, identity_ok && mc_ok == 10,
         fmt("identity radius is zero at all orders: %s; Monte Carlo <= exact on %d/10 "
             "matrices",
             identity_ok ? "yes" : "no", mc_ok));
}

// criterion 11: byte-identical output under a repeated seed
void criterion_11() {
  const auto run_twice = [](const ExperimentConfig& cfg) {
    std::stringstream a, b;
    run_experiment(cfg, a);
    run_experiment(cfg, b);
    return a.str() == b.str() && !a.str().empty();
  };
  ExperimentConfig rec;
  rec.experiment = "exact_recovery";
  rec.n = 20;
  rec.m = 10;
  rec.k_true = 2;
  rec.s_known = 2;
  rec.trials = 3;
  rec.seed = 77;
  ExperimentConfig seq;
  seq.experiment = "sequence";
  seq.n = 24;
  seq.m = 14;
  seq.k_true = 3;
  seq.frames = 4;
  seq.seed = 5;
  const bool pass = run_twice(rec) && run_twice(seq);
  report(11, pass, "repeated seeds reproduce byte-identical experiment output");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1();
  criterion_2();

  std::vector<SolveRecord> audits = criterion_3();

  // criteria 4 and 8 share the certified-radius instance pool
  double best_condition = 0.0;
  const std::vector<CertifiedInstance> certified =
      certify_frames(10, 14, 40, 400, /*use_simplex=*/false, &best_condition);
  std::vector<SolveRecord> c4_records = criterion_4(certified, best_condition);
  for (SolveRecord& r : c4_records) audits.push_back(std::move(r));

  std::vector<SolveRecord> c5_records = criterion_5();
  for (SolveRecord& r : c5_records) audits.push_back(std::move(r));

  criterion_6(audits);
  criterion_7();
  criterion_8(certified);
  criterion_9();
  criterion_10();
  criterion_11();

  // Supplementary demonstrations on a geometry whose exact radii do satisfy
  // the premises (n=14, m=13 perturbed simplex frames; s=2, k=1 unchanged):
  // the bound-verification and comparison protocols run end to end there.
  {
    double best = 0.0;
    const std::vector<CertifiedInstance> simplex =
        certify_frames(13, 14, 40, 1400, /*use_simplex=*/true, &best);
    int margin_ok = 0, total = 0;
    int cert_ok = 0, cert_total = 0;
    const std::vector<double> eps_grid = {0.0, 0.01, 0.1};
    std::vector<SolveRecord> supp_records;
    if (!simplex.empty()) {
      for (int trial = 0; trial < 100; ++trial) {
        const CertifiedInstance& inst = simplex[trial % simplex.size()];
        BoundTrial bt = bound_trial(inst, eps_grid[trial % eps_grid.size()],
                                    derive_seed(1500, static_cast<std::uint64_t>(trial)));
        ++total;
        if (bt.margin_ok) ++margin_ok;
        supp_records.push_back(std::move(bt.record));
      }
      for (const SolveRecord& rec : supp_records) {
        if (!rec.result.converged) continue;
        ++cert_total;
        if (check_optimality(rec.result.x_star, rec.phi, rec.y, rec.epsilon, rec.t_set, 1e-5).pass)
          ++cert_ok;
      }
    }
    supplementary(fmt("bound verification at n=14, m=13 (certified perturbed simplex frames, "
                      "%zu/40 accepted): margins >= 0 in %d/%d trials, certificates pass "
                      "%d/%d",
                      simplex.size(), margin_ok, total, cert_ok, cert_total));

    // cancel-then-recover comparison on the same certified pool
    const double stable_cut = (std::sqrt(2.0) - 1.0) / std::sqrt(2.0);
    int cmp_ok = 0, cmp_ordered = 0, cmp_total = 0;
    for (int trial = 0; trial < 100 && !simplex.empty(); ++trial) {
      const CertifiedInstance& inst = simplex[trial % simplex.size()];
      if (!(inst.report.delta_s2k < stable_cut) || !inst.report.d_tilde) continue;
      const std::uint64_t seed = derive_seed(1600, static_cast<std::uint64_t>(trial));
      auto [x, supp] = generate_signal(14, 3, SignalModel::power_law(1.5), derive_seed(seed, 1));
      Rng t_rng(derive_seed(seed, 2));
      const SupportSet t = make_known_support(supp, 2, 0, t_rng);
      const Vector y = inst.phi * x;
      const RecoveryResult direct = solve_ibpdn(inst.phi, y, 0.0, t, {});
      const CtrRecovery rec = recover_ctr(build_ctr(inst.phi, t), inst.phi, y, 0.0, {});
      const double e0 = compressibility_error(x - restrict_to(x, t), 1);
      const SupportSet outside = t.complement();
      ++cmp_total;
      if ((restrict_to(x, outside) - restrict_to(rec.x_tilde, outside)).norm() <=
              *inst.report.d_tilde * e0 &&
          (x - direct.x_star).norm() <= *inst.report.d_const * e0)
        ++cmp_ok;
      if (*inst.report.d_const < *inst.report.d_tilde) ++cmp_ordered;
    }
    supplementary(fmt("cancel-then-recover comparison at n=14, m=13: both bounds hold in "
                      "%d/%d trials, D < D_tilde in %d/%d",
                      cmp_ok, cmp_total, cmp_ordered, cmp_total));
  }

  // certificates at a radius where double precision leaves dual headroom
  {
    int pass = 0, total = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint64_t ts = derive_seed(42, static_cast<std::uint64_t>(trial));
      const SensingOperator phi = make_ensemble(64, 128, EnsembleTag::Gaussian, derive_seed(ts, 1));
      auto [x, supp] = generate_signal(128, 16, SignalModel::exact_sparse(), derive_seed(ts, 2));
      Rng t_rng(derive_seed(ts, 3));
      const SupportSet t = make_known_support(supp, 12, 2, t_rng);
      const Vector y = phi.matrix() * x;
      const RecoveryResult res = solve_ibpdn(phi.matrix(), y, 1e-3, t, {});
      if (!res.converged) continue;
      ++total;
      if (check_optimality(res.x_star, phi.matrix(), y, 1e-3, t, 1e-5).pass) ++pass;
    }
    supplementary(fmt("certificates on the criterion-3 instances re-solved at tube 1e-3: "
                      "%d/%d pass (dual_tol 1e-5)",
                      pass, total));
  }

  std::printf("%d criteria failed\n", failures);
  return failures;
}
