#include <doctest.h>

#include <cmath>

#include "hetbandit/errors.hpp"
#include "hetbandit/scenarios.hpp"
#include "hetbandit/simulator.hpp"
#include "hetbandit/verify.hpp"
#include "hetbandit/verify_suites.hpp"

using namespace hetbandit;

TEST_CASE("KKT weights match the closed form example") {
  const std::vector<double> s = {0.5, 1.0};
  const std::vector<std::uint64_t> c = {2, 1};
  const auto w = oracle_min_width_weights(s, c);
  CHECK(w[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(oracle_min_width_weights(s, std::vector<std::uint64_t>{0, 0}), NoDataError);
}

TEST_CASE("property: KKT weights agree with the closed form") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t agents = 1 + rng.below(8);
    std::vector<double> s(agents);
    std::vector<std::uint64_t> c(agents);
    for (std::size_t a = 0; a < agents; ++a) {
      s[a] = 0.01 + 0.99 * rng.uniform();
      c[a] = rng.below(4) == 0 ? 0 : rng.below(1000);
    }
    c[rng.below(agents)] = 1 + rng.below(50);
    const auto fast = min_width_weights(s, c);
    const auto slow = oracle_min_width_weights(s, c);
    double constraint = 0.0;
    for (std::size_t a = 0; a < agents; ++a) {
      CHECK(std::abs(fast[a] - slow[a]) <= 1e-9);
      constraint += fast[a] * s[a] * static_cast<double>(c[a]);
    }
    CHECK(std::abs(constraint - 1.0) <= 1e-12);
  }
}

TEST_CASE("empirical coverage on hotel") {
  const auto& hotel = find_scenario("hotel").instance;
  CoverageOptions opts;
  opts.trials = 400;
  opts.horizon = 200;
  const CoverageReport base = empirical_coverage(hotel, opts);
  CHECK(base.trials == 400);
  CHECK(base.empirical_coverage >= 0.95);

  opts.check_delta = 0.025;
  const CoverageReport wider = empirical_coverage(hotel, opts);
  CHECK(wider.violations <= base.violations);
  CHECK(wider.empirical_coverage >= base.empirical_coverage);
}

TEST_CASE("regret bound value") {
  const auto inst = ProblemInstance::create({0.2, 0.5, 0.8}, {0.5, 1.0});
  const double expected =
      2.0 * 2.0 + 2.0 * std::sqrt(2.0 * 2 * 3 * 100 * (std::log(2.0 * 3 / 0.05) + log_G(100, 2).value)) * 2.0;
  CHECK(regret_bound(inst, 0.05, 100) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("regret bound holds on a short run") {
  const auto& covid = find_scenario("covid").instance;
  ExperimentConfig cfg{.instance = covid};
  cfg.horizon = 300;
  cfg.width_mode = WidthMode::kFixedHorizon;
  const Trajectory tr = run_trial(cfg, PolicyId::kMinWidth, 0);
  const BoundReport r = check_regret_bound(tr, covid, 0.05, 300);
  CHECK(r.observed_regret == tr.final_regret());
  CHECK(r.satisfied);
  CHECK(r.observed_regret < r.bound_value);
}

TEST_CASE("single arm single agent has zero regret and satisfies the bound") {
  const auto inst = ProblemInstance::create({0.4}, {0.7});
  ExperimentConfig cfg{.instance = inst};
  cfg.horizon = 50;
  const Trajectory tr = run_trial(cfg, PolicyId::kMinWidth, 0);
  CHECK(tr.final_regret() == 0.0);
  CHECK(check_regret_bound(tr, inst, 0.05, 50).satisfied);
}

TEST_CASE("pull-sum lemma") {
  const auto inst = ProblemInstance::create({0.2, 0.5, 0.8, 0.4}, {0.5, 0.9});
  for (PolicyId id : kAllPolicies) {
    ExperimentConfig cfg{.instance = inst};
    cfg.horizon = 400;
    const Trajectory tr = run_trial(cfg, id, 1);
    const LemmaReport r = evaluate_pull_sum_lemma(tr, inst.num_arms());
    CHECK(r.holds);
    CHECK(r.lhs < r.rhs);
    CHECK(r.rhs == doctest::Approx(2.0 * std::sqrt(2.0 * 4 * 400)).epsilon(1e-14));
    CHECK(check_pull_sum_lemma(tr, inst.num_arms()));
  }
}

TEST_CASE("pull-sum lemma is vacuous before step N") {
  const auto inst = ProblemInstance::create({0.2, 0.5, 0.8, 0.4, 0.6}, {0.5, 0.9});
  ExperimentConfig cfg{.instance = inst};
  cfg.horizon = 4;
  const Trajectory tr = run_trial(cfg, PolicyId::kCucb, 0);
  const LemmaReport r = evaluate_pull_sum_lemma(tr, inst.num_arms());
  CHECK(r.lhs == 0.0);
  CHECK(r.holds);
}

TEST_CASE("verify suites") {
  SuiteOptions opts;
  opts.cases = 200;
  CHECK(run_verify_suite("weights", opts).passed);
  const SuiteResult g = run_verify_suite("g-count", opts);
  CHECK(g.passed);
  CHECK(g.report.contains("suite"));

  SuiteOptions small;
  small.scenarios = {"synthetic-0.1,0.5,0.9-0.5,0.5"};
  small.trials = 1;
  small.horizon = 100;
  CHECK(run_verify_suite("lemma", small).passed);

  CHECK_THROWS_AS(run_verify_suite("nonsense", opts), ConfigError);
  SuiteOptions missing;
  missing.scenarios = {"atlantis"};
  CHECK_THROWS_AS(run_verify_suite("coverage", missing), CatalogMiss);
}
