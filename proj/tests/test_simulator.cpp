#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hetbandit/errors.hpp"
#include "hetbandit/scenarios.hpp"
#include "hetbandit/simulator.hpp"

using namespace hetbandit;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg{.instance = ProblemInstance::create({0.2, 0.5, 0.8, 0.4}, {0.4, 0.9})};
  cfg.horizon = 120;
  cfg.trials = 6;
  cfg.master_seed = 17;
  return cfg;
}

}  // namespace

TEST_CASE("trial seeds are distinct per policy and trial") {
  const auto a = trial_seeds(1, PolicyId::kMinWidth, 0);
  const auto b = trial_seeds(1, PolicyId::kMinWidth, 1);
  const auto c = trial_seeds(1, PolicyId::kCucb, 0);
  const auto d = trial_seeds(2, PolicyId::kMinWidth, 0);
  CHECK(a.environment != a.policy);
  CHECK(a.environment != b.environment);
  CHECK(a.environment != c.environment);
  CHECK(a.environment != d.environment);
  CHECK(a.environment == trial_seeds(1, PolicyId::kMinWidth, 0).environment);
}

TEST_CASE("run_trial is deterministic") {
  const auto cfg = small_config();
  for (PolicyId id : kAllPolicies) CHECK(run_trial(cfg, id, 3) == run_trial(cfg, id, 3));
}

TEST_CASE("trajectory bookkeeping") {
  const auto cfg = small_config();
  for (PolicyId id : kAllPolicies) {
    const Trajectory tr = run_trial(cfg, id, 0);
    REQUIRE(tr.steps() == cfg.horizon);
    CHECK(tr.num_agents == 2);
    CHECK(tr.pulled_arm_counts.size() == cfg.horizon * 2);
    double running = 0.0;
    for (std::size_t t = 0; t < tr.steps(); ++t) {
      CHECK(tr.increments[t] >= 0.0);
      CHECK(tr.increments[t] == doctest::Approx(regret_increment(cfg.instance, tr.assignments[t])).epsilon(1e-15));
      running += tr.increments[t];
      CHECK(tr.cumulative_regret[t] == doctest::Approx(running).epsilon(1e-12));
    }
    // Counts are post-pull, so at least the step's own pull.
    for (std::uint64_t c : tr.pulled_arm_counts) CHECK(c >= 1);
  }
}

TEST_CASE("single arm single agent has zero regret for every policy") {
  ExperimentConfig cfg{.instance = ProblemInstance::create({0.6}, {0.3})};
  cfg.horizon = 40;
  cfg.trials = 3;
  const auto result = run_experiment(cfg, RunOptions{.threads = 1});
  for (const auto& curve : result.curves) {
    for (double m : curve.mean) CHECK(m == 0.0);
    for (double s : curve.standard_error) CHECK(s == 0.0);
  }
}

TEST_CASE("one trial has zero standard error") {
  auto cfg = small_config();
  cfg.trials = 1;
  const auto result = run_experiment(cfg, RunOptions{.threads = 1});
  for (const auto& curve : result.curves) {
    for (double s : curve.standard_error) CHECK(s == 0.0);
    CHECK(curve.final_regrets.size() == 1);
    CHECK(curve.final_mean() == curve.final_regrets[0]);
  }
}

TEST_CASE("aggregation matches per-trial runs") {
  const auto cfg = small_config();
  const auto result = run_experiment(cfg, RunOptions{.threads = 1});
  REQUIRE(result.curves.size() == 5);
  CHECK(result.trials == cfg.trials);
  CHECK(result.horizon == cfg.horizon);
  for (const auto& curve : result.curves) {
    std::vector<double> finals;
    for (std::uint64_t k = 0; k < cfg.trials; ++k) finals.push_back(run_trial(cfg, curve.policy, k).final_regret());
    CHECK(finals == curve.final_regrets);
    const MeanSe ms = mean_and_se(finals);
    CHECK(curve.final_mean() == doctest::Approx(ms.mean).epsilon(1e-12));
    CHECK(curve.final_se() == doctest::Approx(ms.se).epsilon(1e-12));
    for (std::size_t t = 1; t < curve.mean.size(); ++t) CHECK(curve.mean[t] >= curve.mean[t - 1]);
  }
}

TEST_CASE("results do not depend on thread count") {
  const auto cfg = small_config();
  const auto one = run_experiment(cfg, RunOptions{.threads = 1});
  const auto three = run_experiment(cfg, RunOptions{.threads = 3});
  CHECK(one == three);
}

TEST_CASE("mean_and_se") {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const MeanSe ms = mean_and_se(v);
  CHECK(ms.mean == 2.5);
  CHECK(ms.se == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-15));
  CHECK(mean_and_se(std::vector<double>{7.0}).se == 0.0);
}

TEST_CASE("enumeration cap is reported before running") {
  ExperimentConfig cfg{.instance = ProblemInstance::create(
                           {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95},
                           {0.5, 0.6, 0.7, 0.8, 0.9})};
  cfg.policies = {PolicyId::kSuperArmUcb};
  cfg.horizon = 10;
  cfg.enumeration_cap = 1000;
  CHECK_THROWS_AS(run_experiment(cfg), EnumerationTooLarge);
}

TEST_CASE("invalid experiments are rejected") {
  auto cfg = small_config();
  cfg.horizon = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.policies.clear();
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.delta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("believed sensitivities steer the policy but not the regret") {
  const auto& over = find_scenario("covid-robust-over").instance;
  ExperimentConfig cfg{.instance = over};
  cfg.horizon = 50;
  const Trajectory tr = run_trial(cfg, PolicyId::kMinWidth, 0);
  for (std::size_t t = 0; t < tr.steps(); ++t) {
    CHECK(tr.increments[t] == doctest::Approx(regret_increment(over, tr.assignments[t])).epsilon(1e-15));
  }
}
