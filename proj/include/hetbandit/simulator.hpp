#pragma once

#include <cstdint>
#include <vector>

#include "hetbandit/core.hpp"
#include "hetbandit/policies.hpp"

namespace hetbandit {

struct ExperimentConfig {
  ProblemInstance instance;
  std::vector<PolicyId> policies{std::begin(kAllPolicies), std::end(kAllPolicies)};
  std::uint64_t horizon = 1;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  double delta = 0.05;
  WidthMode width_mode = WidthMode::kAnytime;
  TieMode tie_mode = TieMode::kIndex;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;

  PolicyConfig policy_config() const;
  /// Throws ConfigError.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Stream seeds for one (policy, trial): the environment draws rewards from
/// the first, the policy's own randomness comes from the second.
struct TrialSeeds {
  std::uint64_t environment;
  std::uint64_t policy;
};
TrialSeeds trial_seeds(std::uint64_t master_seed, PolicyId policy, std::uint64_t trial) noexcept;

/// T steps of select -> draw_rewards -> observe, recording expected regret.
Trajectory run_trial(const ExperimentConfig& config, PolicyId policy, std::uint64_t trial);

/// Same loop against an already constructed policy; the policy is reset
/// with seeds.policy first.
Trajectory run_trial(const ProblemInstance& instance, Policy& policy, std::uint64_t horizon,
                     const TrialSeeds& seeds);

struct PolicyCurve {
  PolicyId policy;
  /// Mean cumulative regret after steps 1..T.
  std::vector<double> mean;
  /// Sample standard deviation over trials / sqrt(trials); 0 for one trial.
  std::vector<double> standard_error;
  /// R_T of each trial, by trial index.
  std::vector<double> final_regrets;

  double final_mean() const noexcept { return mean.empty() ? 0.0 : mean.back(); }
  double final_se() const noexcept { return standard_error.empty() ? 0.0 : standard_error.back(); }

  friend bool operator==(const PolicyCurve&, const PolicyCurve&) = default;
};

struct AggregateResult {
  std::vector<PolicyCurve> curves;
  std::uint64_t trials = 0;
  std::uint64_t horizon = 0;
  std::uint64_t master_seed = 0;

  /// Throws std::out_of_range if the policy was not run.
  const PolicyCurve& curve(PolicyId policy) const;

  friend bool operator==(const AggregateResult&, const AggregateResult&) = default;
};

struct RunOptions {
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Runs every (policy, trial) pair and folds the curves in trial order, so
/// the result does not depend on the thread count.
AggregateResult run_experiment(const ExperimentConfig& config, RunOptions options = {});

/// Sample mean and standard error of a set of values.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_and_se(std::span<const double> values) noexcept;

}  // namespace hetbandit
