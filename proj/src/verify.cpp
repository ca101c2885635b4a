#include "hetbandit/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "hetbandit/combinatorics.hpp"
#include "hetbandit/errors.hpp"
#include "hetbandit/simulator.hpp"

namespace hetbandit {

std::vector<double> oracle_min_width_weights(std::span<const double> sensitivities,
                                             std::span<const std::uint64_t> counts) {
  if (sensitivities.size() != counts.size()) {
    throw DomainError("oracle_min_width_weights: one count per agent expected");
  }
  std::vector<std::size_t> active;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] > 0) active.push_back(a);
  }
  if (active.empty()) throw NoDataError("oracle_min_width_weights: all counts are zero");

  // Stationarity 2 C w + lambda g = 0 and feasibility g^T w = 1, with
  // C = diag(c_a) and g_a = s_a c_a.
  const auto k = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    const std::size_t a = active[static_cast<std::size_t>(i)];
    const double c = static_cast<double>(counts[a]);
    const double g = sensitivities[a] * c;
    kkt(i, i) = 2.0 * c;
    kkt(i, k) = g;
    kkt(k, i) = g;
  }
  rhs(k) = 1.0;
  const Eigen::VectorXd solution = kkt.fullPivLu().solve(rhs);

  std::vector<double> w(counts.size(), 0.0);
  for (Eigen::Index i = 0; i < k; ++i) w[active[static_cast<std::size_t>(i)]] = solution(i);
  return w;
}

CoverageReport empirical_coverage(const ProblemInstance& instance, const CoverageOptions& options) {
  PolicyConfig pc;
  pc.delta = options.delta;
  pc.width_mode = options.width_mode;
  pc.horizon = options.horizon;
  pc.validate();
  const double check_delta = options.check_delta.value_or(options.delta);
  if (!(check_delta > 0.0 && check_delta < 1.0)) throw ConfigError("check delta must lie in (0,1)");

  const auto means = instance.arm_means();
  const std::size_t num_arms = instance.num_arms();
  const double log_2n = std::log(2.0 * static_cast<double>(num_arms));
  LogGSeries log_g(instance.num_agents());

  MinWidthPolicy policy(instance, pc);
  CoverageReport report;
  report.trials = options.trials;
  for (std::uint64_t trial = 0; trial < options.trials; ++trial) {
    const TrialSeeds seeds = trial_seeds(options.seed, PolicyId::kMinWidth, trial);
    policy.reset(seeds.policy);
    Rng env(seeds.environment);
    bool violated = false;
    for (std::uint64_t t = 1; t <= options.horizon && !violated; ++t) {
      const Assignment f = policy.select(t);
      policy.observe(f, draw_rewards(instance, f, env));
      const double log_term = log_2n + log_g.at(pc.radius_step(t)).value - std::log(check_delta);
      for (ArmIndex n = 0; n < num_arms; ++n) {
        const double v = policy.weighted_counts()[n];
        if (v == 0.0) continue;  // mu_hat = 0.5, eps = inf
        const double mu_hat = policy.weighted_rewards()[n] / v;
        const double eps = std::sqrt(log_term / (2.0 * v));
        if (std::abs(mu_hat - means[n]) >= eps) {
          violated = true;
          break;
        }
      }
    }
    if (violated) ++report.violations;
  }
  report.empirical_coverage =
      report.trials == 0 ? 1.0
                         : 1.0 - static_cast<double>(report.violations) / static_cast<double>(report.trials);
  return report;
}

double regret_bound(const ProblemInstance& instance, double delta, std::uint64_t horizon) {
  const auto a = static_cast<double>(instance.num_agents());
  const auto n = static_cast<double>(instance.num_arms());
  const auto t = static_cast<double>(horizon);
  const auto sens = instance.sensitivities();
  const auto [lo, hi] = std::minmax_element(sens.begin(), sens.end());
  const double log_term = std::log(2.0 * n) + log_G(horizon, instance.num_agents()).value - std::log(delta);
  return a * (n - 1.0) + 2.0 * std::sqrt(2.0 * a * n * t * log_term) * (*hi / *lo);
}

BoundReport check_regret_bound(const Trajectory& trajectory, const ProblemInstance& instance,
                               double delta, std::uint64_t horizon) {
  BoundReport report;
  const std::size_t steps = std::min<std::size_t>(horizon, trajectory.steps());
  report.observed_regret = steps == 0 ? 0.0 : trajectory.cumulative_regret[steps - 1];
  report.bound_value = regret_bound(instance, delta, horizon);
  report.satisfied = report.observed_regret < report.bound_value;
  return report;
}

LemmaReport evaluate_pull_sum_lemma(const Trajectory& trajectory, std::size_t num_arms) {
  LemmaReport report;
  const std::size_t a = trajectory.num_agents;
  const std::size_t horizon = trajectory.steps();
  std::size_t terms = 0;
  for (std::size_t t = std::max<std::size_t>(num_arms, 1); t <= horizon; ++t) {
    for (std::size_t agent = 0; agent < a; ++agent) {
      const auto c = trajectory.pulled_arm_counts[(t - 1) * a + agent];
      report.lhs += 1.0 / std::sqrt(static_cast<double>(c));
      ++terms;
    }
  }
  report.rhs = 2.0 * std::sqrt(static_cast<double>(a) * static_cast<double>(num_arms) *
                               static_cast<double>(horizon));
  // An empty sum holds vacuously.
  report.holds = terms == 0 || report.lhs < report.rhs;
  return report;
}

bool check_pull_sum_lemma(const Trajectory& trajectory, std::size_t num_arms) {
  return evaluate_pull_sum_lemma(trajectory, num_arms).holds;
}

}  // namespace hetbandit
