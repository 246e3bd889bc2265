#include <ibpdn/experiments.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <ibpdn/analysis.hpp>
#include <ibpdn/cancel_recover.hpp>
#include <ibpdn/random.hpp>
#include <ibpdn/sensing.hpp>
#include <ibpdn/serialize.hpp>
#include <ibpdn/signals.hpp>

namespace ibpdn {

namespace {

SignalModel parse_model(const ExperimentConfig& cfg) {
  if (cfg.model == "exact_sparse") return SignalModel::exact_sparse();
  if (cfg.model == "power_law") return SignalModel::power_law(cfg.exponent);
  throw std::invalid_argument("unknown signal model: " + cfg.model);
}

struct Instance {
  SensingOperator phi;
  Vector x;
  SupportSet true_support;
  SupportSet t_set;
  Measurement meas;
};

/// One seeded problem instance: ensemble matrix, signal, known support with
/// round(rho_good * s_known) correct entries, measurements at the configured
/// noise level.
Instance make_instance(const ExperimentConfig& cfg, Index m, Index k_true, double epsilon,
                       std::uint64_t trial_seed) {
  SensingOperator phi =
      make_ensemble(m, cfg.n, ensemble_from_string(cfg.ensemble), derive_seed(trial_seed, 1));
  auto [x, support] = generate_signal(cfg.n, k_true, parse_model(cfg), derive_seed(trial_seed, 2));

  Rng support_rng(derive_seed(trial_seed, 3));
  const Index want_good =
      std::min<Index>(support.size(), static_cast<Index>(std::llround(cfg.rho_good * static_cast<double>(cfg.s_known))));
  const Index want_spurious = std::min<Index>(cfg.s_known - want_good, cfg.n - support.size());
  SupportSet t_set = make_known_support(support, want_good, want_spurious, support_rng);

  Measurement meas = measure(phi, x, epsilon, derive_seed(trial_seed, 4));
  return {std::move(phi), std::move(x), std::move(support), std::move(t_set), std::move(meas)};
}

double relative_error(const Vector& x, const Vector& x_star) {
  const double scale = x.norm();
  const double err = (x - x_star).norm();
  return scale > 0.0 ? err / scale : err;
}

/// Exact radii for the bound, when enumeration is tractable and both radii
/// stay below one with the condition satisfied.
std::optional<BoundReport> certified_report(const Matrix& phi, Index s, Index k) {
  const Index n = phi.cols();
  const Index q_small = 2 * k;
  const Index q_large = s + 2 * k;
  if (q_small < 1 || q_large > n) return std::nullopt;
  if (support_count(n, q_small) > kMaxEnumeratedSupports ||
      support_count(n, q_large) > kMaxEnumeratedSupports)
    return std::nullopt;
  const RipEstimate small = rip_radius(phi, q_small, RipMethod::ExactEnumeration);
  const RipEstimate large = rip_radius(phi, q_large, RipMethod::ExactEnumeration);
  if (small.saturated || large.saturated) return std::nullopt;
  BoundReport report = with_ctr_constants(stability_constants(large.radius, small.radius));
  if (!report.condition_ok) return std::nullopt;
  return report;
}

void run_solve(const ExperimentConfig& cfg, std::ostream& os) {
  const Instance inst = make_instance(cfg, cfg.m, cfg.k_true, cfg.epsilon, cfg.seed);
  const RecoveryResult result =
      solve_ibpdn(inst.phi, inst.meas.y, cfg.epsilon, inst.t_set, cfg.solver_config());
  Json j = to_json(result);
  j["true_error"] = (inst.x - result.x_star).norm();
  j["noise_norm"] = inst.meas.noise_norm;
  os << j.dump(2) << '\n';
}

void run_constants(const ExperimentConfig& cfg, std::ostream& os) {
  const BoundReport report = with_ctr_constants(stability_constants(cfg.delta_s2k, cfg.delta_2k));
  os << to_json(report).dump(2) << '\n';
}

void run_rip(const ExperimentConfig& cfg, std::ostream& os) {
  const SensingOperator phi =
      make_ensemble(cfg.m, cfg.n, ensemble_from_string(cfg.ensemble), derive_seed(cfg.seed, 1));
  const RipEstimate est = rip_radius(phi, cfg.q, rip_method_from_string(cfg.method),
                                     derive_seed(cfg.seed, 2), cfg.samples);
  os << to_json(est).dump(2) << '\n';
}

void run_exact_recovery(const ExperimentConfig& cfg, std::ostream& os) {
  os << "seed,error,converged,iterations\n";
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(trial));
    const Instance inst = make_instance(cfg, cfg.m, cfg.k_true, 0.0, trial_seed);
    const RecoveryResult result =
        solve_ibpdn(inst.phi, inst.meas.y, cfg.epsilon, inst.t_set, cfg.solver_config());
    os << trial_seed << ',' << format_csv((inst.x - result.x_star).norm()) << ','
       << (result.converged ? 1 : 0) << ',' << result.iterations << '\n';
  }
}

void run_noise_sweep(const ExperimentConfig& cfg, std::ostream& os) {
  std::vector<double> grid = cfg.epsilon_grid;
  if (grid.empty()) grid = {0.0, 0.01, 0.1};
  os << "epsilon,mean_error,bound_rhs,margin\n";
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const double eps = grid[gi];
    double error_sum = 0.0;
    std::optional<double> worst_margin;
    std::optional<double> rhs_max;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t trial_seed =
          derive_seed(cfg.seed, static_cast<std::uint64_t>(trial) * 1000 + gi);
      const Instance inst = make_instance(cfg, cfg.m, cfg.k_true, eps, trial_seed);
      const RecoveryResult result =
          solve_ibpdn(inst.phi, inst.meas.y, eps, inst.t_set, cfg.solver_config());
      error_sum += (inst.x - result.x_star).norm();

      Index k = cfg.k_bound;
      if (k <= 0) k = std::max<Index>(1, cfg.k_true - inst.t_set.size());
      const auto report = certified_report(inst.phi.effective(), inst.t_set.size(), k);
      if (report) {
        const BoundCheck check = verify_bound(inst.x, result.x_star, eps, inst.t_set, k, *report);
        rhs_max = std::max(rhs_max.value_or(0.0), check.rhs);
        worst_margin = std::min(worst_margin.value_or(check.margin), check.margin);
      }
    }
    os << format_csv(eps) << ',' << format_csv(error_sum / cfg.trials) << ',';
    if (rhs_max) os << format_csv(*rhs_max);
    os << ',';
    if (worst_margin) os << format_csv(*worst_margin);
    os << '\n';
  }
}

void run_phase(const ExperimentConfig& cfg, std::ostream& os) {
  std::vector<Index> m_grid = cfg.m_grid;
  std::vector<Index> k_grid = cfg.k_grid;
  if (m_grid.empty()) m_grid = {cfg.m};
  if (k_grid.empty()) k_grid = {cfg.k_true};
  os << "m,k,success_rate\n";
  for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
    for (std::size_t ki = 0; ki < k_grid.size(); ++ki) {
      int successes = 0;
      for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t trial_seed = derive_seed(
            cfg.seed, (static_cast<std::uint64_t>(mi) * k_grid.size() + ki) * 100000 +
                          static_cast<std::uint64_t>(trial));
        const Instance inst = make_instance(cfg, m_grid[mi], k_grid[ki], cfg.epsilon, trial_seed);
        const RecoveryResult result =
            solve_ibpdn(inst.phi, inst.meas.y, cfg.epsilon, inst.t_set, cfg.solver_config());
        if (relative_error(inst.x, result.x_star) < 1e-3) ++successes;
      }
      os << m_grid[mi] << ',' << k_grid[ki] << ','
         << format_csv(static_cast<double>(successes) / cfg.trials) << '\n';
    }
  }
}

void run_ctr_compare(const ExperimentConfig& cfg, std::ostream& os) {
  os << "trial,err_ibpdn_tc,err_ctr_tc,bound_ibpdn,bound_ctr\n";
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(trial));
    const Instance inst = make_instance(cfg, cfg.m, cfg.k_true, cfg.epsilon, trial_seed);
    const Matrix phi = inst.phi.effective();

    const RecoveryResult ibpdn =
        solve_ibpdn(phi, inst.meas.y, cfg.epsilon, inst.t_set, cfg.solver_config());
    const CtrProblem ctr = build_ctr(phi, inst.t_set);
    const CtrRecovery ctr_rec = recover_ctr(ctr, phi, inst.meas.y, cfg.epsilon, cfg.solver_config());

    const SupportSet outside = inst.t_set.complement();
    const Vector x_tc = restrict_to(inst.x, outside);
    const double err_ibpdn = (x_tc - restrict_to(ibpdn.x_star, outside)).norm();
    const double err_ctr = (x_tc - restrict_to(ctr_rec.x_tilde, outside)).norm();

    Index k = cfg.k_bound;
    if (k <= 0) k = std::max<Index>(1, cfg.k_true - inst.t_set.size());
    const auto report = certified_report(phi, inst.t_set.size(), k);

    os << trial << ',' << format_csv(err_ibpdn) << ',' << format_csv(err_ctr) << ',';
    if (report) {
      const double e0 = compressibility_error(inst.x - restrict_to(inst.x, inst.t_set), k);
      os << format_csv(*report->c_const * cfg.epsilon + *report->d_const * e0);
      os << ',';
      if (cfg.epsilon == 0.0 && report->d_tilde) os << format_csv(*report->d_tilde * e0);
    } else {
      os << ',';
    }
    os << '\n';
  }
}

void run_sequence(const ExperimentConfig& cfg, std::ostream& os) {
  Rng evolution_rng(derive_seed(cfg.seed, 3));
  const SensingOperator phi =
      make_ensemble(cfg.m, cfg.n, ensemble_from_string(cfg.ensemble), derive_seed(cfg.seed, 1));
  auto [x, support] =
      generate_signal(cfg.n, cfg.k_true, SignalModel::exact_sparse(), derive_seed(cfg.seed, 2));

  os << "frame,error_tracked,error_baseline\n";
  SupportSet tracked_t = SupportSet::empty(cfg.n);
  for (int frame = 0; frame < cfg.frames; ++frame) {
    if (frame > 0) {
      // slow support evolution: swap a few indices, keep persisting values
      std::vector<Index> current = support.indices();
      const Index swaps = std::min<Index>(cfg.swaps_per_frame, static_cast<Index>(current.size()));
      SupportSet outside = support.complement();
      const auto drop = evolution_rng.sample_without_replacement(support.size(), swaps);
      const auto add = evolution_rng.sample_without_replacement(outside.size(), swaps);
      for (Index j = 0; j < swaps; ++j) {
        const Index removed = current[static_cast<std::size_t>(drop[static_cast<std::size_t>(j)])];
        const Index added = outside.indices()[static_cast<std::size_t>(add[static_cast<std::size_t>(j)])];
        x[removed] = 0.0;
        x[added] = evolution_rng.sign() * evolution_rng.uniform(1.0, 2.0);
      }
      support = support_from_threshold(x, 0.0);
    }
    const Measurement meas =
        measure(phi, x, cfg.epsilon, derive_seed(cfg.seed, 100 + static_cast<std::uint64_t>(frame)));

    const RecoveryResult tracked =
        solve_ibpdn(phi, meas.y, cfg.epsilon, tracked_t, cfg.solver_config());
    const RecoveryResult baseline =
        solve_ibpdn(phi, meas.y, cfg.epsilon, SupportSet::empty(cfg.n), cfg.solver_config());

    os << frame << ',' << format_csv((x - tracked.x_star).norm()) << ','
       << format_csv((x - baseline.x_star).norm()) << '\n';
    tracked_t = support_from_threshold(tracked.x_star, cfg.support_threshold);
  }
}

}  // namespace

SolverConfig ExperimentConfig::solver_config() const {
  SolverConfig sc;
  sc.gamma = gamma;
  sc.alpha = alpha;
  sc.max_iters = max_iters;
  sc.tolerance = tolerance;
  return sc;
}

void apply_json(ExperimentConfig& config, const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "experiment") config.experiment = value.get<std::string>();
    else if (key == "n") config.n = value.get<Index>();
    else if (key == "m") config.m = value.get<Index>();
    else if (key == "k_true") config.k_true = value.get<Index>();
    else if (key == "s_known") config.s_known = value.get<Index>();
    else if (key == "rho_good") config.rho_good = value.get<double>();
    else if (key == "epsilon") config.epsilon = value.get<double>();
    else if (key == "trials") config.trials = value.get<int>();
    else if (key == "seed") config.seed = value.get<std::uint64_t>();
    else if (key == "ensemble") config.ensemble = value.get<std::string>();
    else if (key == "model") config.model = value.get<std::string>();
    else if (key == "exponent") config.exponent = value.get<double>();
    else if (key == "gamma") config.gamma = value.get<double>();
    else if (key == "alpha") config.alpha = value.get<double>();
    else if (key == "max_iters") config.max_iters = value.get<int>();
    else if (key == "tolerance") config.tolerance = value.get<double>();
    else if (key == "delta_2k") config.delta_2k = value.get<double>();
    else if (key == "delta_s2k") config.delta_s2k = value.get<double>();
    else if (key == "q") config.q = value.get<Index>();
    else if (key == "method") config.method = value.get<std::string>();
    else if (key == "samples") config.samples = value.get<int>();
    else if (key == "epsilon_grid") config.epsilon_grid = value.get<std::vector<double>>();
    else if (key == "k_bound") config.k_bound = value.get<Index>();
    else if (key == "m_grid") config.m_grid = value.get<std::vector<Index>>();
    else if (key == "k_grid") config.k_grid = value.get<std::vector<Index>>();
    else if (key == "frames") config.frames = value.get<int>();
    else if (key == "swaps_per_frame") config.swaps_per_frame = value.get<Index>();
    else if (key == "support_threshold") config.support_threshold = value.get<double>();
    else if (key == "out") config.out = value.get<std::string>();
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

ExperimentConfig config_from_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json j;
  is >> j;
  ExperimentConfig config;
  apply_json(config, j);
  return config;
}

void run_experiment(const ExperimentConfig& cfg, std::ostream& os) {
  if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (cfg.rho_good < 0.0 || cfg.rho_good > 1.0)
    throw std::invalid_argument("config: rho_good must lie in [0, 1]");
  if (cfg.s_known < 0 || cfg.s_known > cfg.n)
    throw std::invalid_argument("config: s_known must lie in [0, n]");
  if (cfg.epsilon < 0.0) throw std::invalid_argument("config: epsilon must be >= 0");

  if (cfg.experiment == "solve") run_solve(cfg, os);
  else if (cfg.experiment == "constants") run_constants(cfg, os);
  else if (cfg.experiment == "rip") run_rip(cfg, os);
  else if (cfg.experiment == "exact_recovery") run_exact_recovery(cfg, os);
  else if (cfg.experiment == "noise_sweep") run_noise_sweep(cfg, os);
  else if (cfg.experiment == "phase") run_phase(cfg, os);
  else if (cfg.experiment == "ctr_compare") run_ctr_compare(cfg, os);
  else if (cfg.experiment == "sequence") run_sequence(cfg, os);
  else throw std::invalid_argument("unknown experiment: " + cfg.experiment);
}

int run_experiment(const ExperimentConfig& cfg) {
  if (cfg.out.empty() || cfg.out == "-") {
    run_experiment(cfg, std::cout);
    return 0;
  }
  std::ofstream os(cfg.out);
  if (!os) {
    std::cerr << "error: cannot open output file: " << cfg.out << '\n';
    return 1;
  }
  run_experiment(cfg, os);
  return 0;
}

}  // namespace ibpdn
