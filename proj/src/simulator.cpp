#include "hetbandit/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "hetbandit/errors.hpp"

namespace hetbandit {

PolicyConfig ExperimentConfig::policy_config() const {
  PolicyConfig pc;
  pc.delta = delta;
  pc.width_mode = width_mode;
  pc.horizon = horizon;
  pc.tie_mode = tie_mode;
  pc.enumeration_cap = enumeration_cap;
  return pc;
}

void ExperimentConfig::validate() const {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (policies.empty()) throw ConfigError("at least one policy is required");
  policy_config().validate();
}

TrialSeeds trial_seeds(std::uint64_t master_seed, PolicyId policy, std::uint64_t trial) noexcept {
  const auto id = static_cast<std::uint64_t>(policy);
  return {derive_seed(master_seed, id, trial, 0), derive_seed(master_seed, id, trial, 1)};
}

Trajectory run_trial(const ProblemInstance& instance, Policy& policy, std::uint64_t horizon,
                     const TrialSeeds& seeds) {
  policy.reset(seeds.policy);
  Rng env(seeds.environment);
  const RegretMeter meter(instance);
  const std::size_t num_agents = instance.num_agents();

  Trajectory traj;
  traj.num_agents = num_agents;
  traj.assignments.reserve(horizon);
  traj.increments.reserve(horizon);
  traj.cumulative_regret.reserve(horizon);
  traj.pulled_arm_counts.reserve(horizon * num_agents);

  // c_{t,n} tracked here, independent of the policy's own bookkeeping.
  std::vector<std::uint64_t> arm_counts(instance.num_arms(), 0);
  double cumulative = 0.0;
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    Assignment f = policy.select(t);
    f.check_against(instance);
    const RewardVector y = draw_rewards(instance, f, env);
    policy.observe(f, y);

    for (AgentIndex a = 0; a < num_agents; ++a) ++arm_counts[f[a]];
    for (AgentIndex a = 0; a < num_agents; ++a) traj.pulled_arm_counts.push_back(arm_counts[f[a]]);

    const double inc = meter.increment(f);
    cumulative += inc;
    traj.increments.push_back(inc);
    traj.cumulative_regret.push_back(cumulative);
    traj.assignments.push_back(std::move(f));
  }
  return traj;
}

Trajectory run_trial(const ExperimentConfig& config, PolicyId policy, std::uint64_t trial) {
  auto p = make_policy(policy, config.instance, config.policy_config());
  return run_trial(config.instance, *p, config.horizon, trial_seeds(config.master_seed, policy, trial));
}

const PolicyCurve& AggregateResult::curve(PolicyId policy) const {
  for (const auto& c : curves) {
    if (c.policy == policy) return c;
  }
  throw std::out_of_range("policy " + std::string(policy_name(policy)) + " was not run");
}

MeanSe mean_and_se(std::span<const double> values) noexcept {
  MeanSe out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double n = static_cast<double>(values.size());
  out.mean = sum / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return out;
}

namespace {

std::string context(PolicyId policy, std::uint64_t trial) {
  return "policy " + std::string(policy_name(policy)) + ", trial " + std::to_string(trial) + ": ";
}

}  // namespace

AggregateResult run_experiment(const ExperimentConfig& config, RunOptions options) {
  config.validate();
  const PolicyConfig pc = config.policy_config();

  // Construct each policy once up front so resource errors surface before
  // any step is simulated.
  for (PolicyId id : config.policies) {
    try {
      (void)make_policy(id, config.instance, pc);
    } catch (const EnumerationTooLarge& e) {
      throw EnumerationTooLarge(context(id, 0) + e.what());
    }
  }

  const std::size_t num_policies = config.policies.size();
  const std::uint64_t trials = config.trials;
  const std::uint64_t horizon = config.horizon;
  // curves[p][trial] = cumulative regret curve.
  std::vector<std::vector<std::vector<double>>> curves(
      num_policies, std::vector<std::vector<double>>(trials));

  const std::uint64_t total_jobs = num_policies * trials;
  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, total_jobs));

  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::uint64_t first_error_job = total_jobs;

  auto worker = [&] {
    // Each worker reuses one policy object per policy id.
    std::vector<std::unique_ptr<Policy>> policies(num_policies);
    while (true) {
      const std::uint64_t job = next.fetch_add(1);
      if (job >= total_jobs) return;
      const std::size_t p = job / trials;
      const std::uint64_t trial = job % trials;
      const PolicyId id = config.policies[p];
      try {
        if (!policies[p]) policies[p] = make_policy(id, config.instance, pc);
        Trajectory traj = run_trial(config.instance, *policies[p], horizon,
                                    trial_seeds(config.master_seed, id, trial));
        curves[p][trial] = std::move(traj.cumulative_regret);
      } catch (const Error& e) {
        std::lock_guard lock(error_mutex);
        if (job < first_error_job) {
          first_error_job = job;
          const std::string what = context(id, trial) + e.what();
          first_error = dynamic_cast<const EnumerationTooLarge*>(&e) != nullptr
                            ? std::make_exception_ptr(EnumerationTooLarge(what))
                            : std::make_exception_ptr(Error(what));
        }
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  AggregateResult result;
  result.trials = trials;
  result.horizon = horizon;
  result.master_seed = config.master_seed;
  std::vector<double> column(trials);
  for (std::size_t p = 0; p < num_policies; ++p) {
    PolicyCurve curve;
    curve.policy = config.policies[p];
    curve.mean.resize(horizon);
    curve.standard_error.resize(horizon);
    curve.final_regrets.resize(trials);
    for (std::uint64_t t = 0; t < horizon; ++t) {
      for (std::uint64_t k = 0; k < trials; ++k) column[k] = curves[p][k][t];
      const MeanSe m = mean_and_se(column);
      curve.mean[t] = m.mean;
      curve.standard_error[t] = m.se;
    }
    for (std::uint64_t k = 0; k < trials; ++k) curve.final_regrets[k] = curves[p][k].back();
    result.curves.push_back(std::move(curve));
    curves[p].clear();
    curves[p].shrink_to_fit();
  }
  return result;
}

}  // namespace hetbandit
