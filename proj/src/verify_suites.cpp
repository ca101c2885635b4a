#include "hetbandit/verify_suites.hpp"

#include <algorithm>
#include <cmath>

#include "hetbandit/combinatorics.hpp"
#include "hetbandit/errors.hpp"
#include "hetbandit/policies.hpp"
#include "hetbandit/scenarios.hpp"
#include "hetbandit/simulator.hpp"
#include "hetbandit/verify.hpp"

namespace hetbandit {

namespace {

using nlohmann::json;

std::vector<std::string> scenarios_or(const SuiteOptions& options, std::vector<std::string> fallback) {
  return options.scenarios.empty() ? fallback : options.scenarios;
}

SuiteResult weights_suite(const SuiteOptions& options) {
  constexpr double kTolerance = 1e-9;
  Rng rng(derive_seed(options.seed, 0x77));
  double worst = 0.0;
  double worst_constraint = 0.0;
  for (std::uint64_t i = 0; i < options.cases; ++i) {
    const std::size_t agents = 1 + rng.below(5);
    std::vector<double> s(agents);
    std::vector<std::uint64_t> c(agents);
    for (auto& x : s) x = 1.0 - rng.uniform();  // (0, 1]
    for (auto& x : c) x = rng.below(51);
    if (std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; })) c[rng.below(agents)] = 1 + rng.below(50);
    const auto closed = min_width_weights(s, c);
    const auto oracle = oracle_min_width_weights(s, c);
    double constraint = 0.0;
    for (std::size_t a = 0; a < agents; ++a) {
      worst = std::max(worst, std::abs(closed[a] - oracle[a]));
      constraint += closed[a] * s[a] * static_cast<double>(c[a]);
    }
    worst_constraint = std::max(worst_constraint, std::abs(constraint - 1.0));
  }
  SuiteResult r;
  r.passed = worst <= kTolerance;
  r.report = {{"cases", options.cases},
              {"max_abs_difference", worst},
              {"tolerance", kTolerance},
              {"max_constraint_residual", worst_constraint}};
  return r;
}

SuiteResult g_count_suite(const SuiteOptions& options) {
  constexpr double kTolerance = 1e-10;
  SuiteResult r;
  r.passed = true;
  json failures = json::array();
  std::uint64_t checked = 0;
  for (std::uint64_t a = 1; a <= options.max_a; ++a) {
    for (std::uint64_t t = 1; t <= options.max_t; ++t) {
      ++checked;
      const double fast = log_G(t, a).value;
      const double brute = brute_force_log_G(t, a).value;
      const bool agree = std::abs(fast - brute) <= kTolerance * std::max(1.0, std::abs(brute));
      const bool single = a != 1 || std::abs(fast - std::log(static_cast<double>(t))) <= kTolerance;
      const bool below = fast < static_cast<double>(a) * std::log(static_cast<double>(t + 1));
      if (!(agree && single && below)) {
        r.passed = false;
        failures.push_back({{"T", t}, {"A", a}, {"log_G", fast}, {"brute_force", brute}});
      }
    }
  }
  r.report = {{"pairs_checked", checked}, {"tolerance", kTolerance}, {"failures", failures}};
  return r;
}

SuiteResult coverage_suite(const SuiteOptions& options) {
  SuiteResult r;
  r.passed = true;
  json rows = json::array();
  for (const auto& name : scenarios_or(options, {"hotel"})) {
    const Scenario& s = find_scenario(name);
    CoverageOptions co;
    co.horizon = options.horizon.value_or(200);
    co.trials = options.trials.value_or(400);
    co.delta = options.delta;
    co.seed = options.seed;
    co.width_mode = WidthMode::kFixedHorizon;
    const CoverageReport cr = empirical_coverage(s.instance, co);
    const bool ok = cr.empirical_coverage >= 1.0 - options.delta;
    r.passed = r.passed && ok;
    rows.push_back({{"scenario", name},
                    {"trials", cr.trials},
                    {"violations", cr.violations},
                    {"empirical_coverage", cr.empirical_coverage},
                    {"passed", ok}});
  }
  r.report = {{"delta", options.delta}, {"width_mode", "fixed-horizon"}, {"scenarios", rows}};
  return r;
}

SuiteResult regret_bound_suite(const SuiteOptions& options) {
  SuiteResult r;
  r.passed = true;
  json rows = json::array();
  for (const auto& name : scenarios_or(options, {"covid", "hotel"})) {
    ExperimentConfig cfg = get_scenario(name);
    cfg.instance = cfg.instance.with_believed(std::nullopt);
    cfg.horizon = options.horizon.value_or(cfg.horizon);
    cfg.delta = options.delta;
    cfg.width_mode = WidthMode::kFixedHorizon;
    cfg.master_seed = options.seed;
    const std::uint64_t runs = options.trials.value_or(200);
    std::uint64_t satisfied = 0;
    double worst_ratio = 0.0;
    double bound = 0.0;
    for (std::uint64_t k = 0; k < runs; ++k) {
      const Trajectory traj = run_trial(cfg, PolicyId::kMinWidth, k);
      const BoundReport br = check_regret_bound(traj, cfg.instance, cfg.delta, cfg.horizon);
      bound = br.bound_value;
      worst_ratio = std::max(worst_ratio, br.observed_regret / br.bound_value);
      if (br.satisfied) ++satisfied;
    }
    const double fraction = static_cast<double>(satisfied) / static_cast<double>(runs);
    const bool ok = fraction >= 1.0 - options.delta;
    r.passed = r.passed && ok;
    rows.push_back({{"scenario", name},
                    {"runs", runs},
                    {"horizon", cfg.horizon},
                    {"bound", bound},
                    {"satisfied_fraction", fraction},
                    {"max_regret_to_bound", worst_ratio},
                    {"passed", ok}});
  }
  r.report = {{"delta", options.delta}, {"scenarios", rows}};
  return r;
}

SuiteResult lemma_suite(const SuiteOptions& options) {
  std::vector<std::string> fallback;
  for (const auto& s : scenario_catalog()) fallback.push_back(s.name);
  SuiteResult r;
  r.passed = true;
  json rows = json::array();
  std::uint64_t trajectories = 0;
  for (const auto& name : scenarios_or(options, fallback)) {
    ExperimentConfig cfg = get_scenario(name);
    cfg.horizon = options.horizon.value_or(cfg.horizon);
    cfg.master_seed = options.seed;
    const std::uint64_t trials = options.trials.value_or(3);
    for (PolicyId id : kAllPolicies) {
      double worst = 0.0;
      bool all_hold = true;
      for (std::uint64_t k = 0; k < trials; ++k) {
        const LemmaReport lr = evaluate_pull_sum_lemma(run_trial(cfg, id, k), cfg.instance.num_arms());
        ++trajectories;
        all_hold = all_hold && lr.holds;
        worst = std::max(worst, lr.lhs / lr.rhs);
      }
      r.passed = r.passed && all_hold;
      rows.push_back({{"scenario", name},
                      {"policy", policy_name(id)},
                      {"trials", trials},
                      {"max_lhs_to_rhs", worst},
                      {"passed", all_hold}});
    }
  }
  r.report = {{"trajectories", trajectories}, {"cases", rows}};
  return r;
}

}  // namespace

SuiteResult run_verify_suite(std::string_view suite, const SuiteOptions& options) {
  SuiteResult r;
  if (suite == "weights") {
    r = weights_suite(options);
  } else if (suite == "g-count") {
    r = g_count_suite(options);
  } else if (suite == "coverage") {
    r = coverage_suite(options);
  } else if (suite == "regret-bound") {
    r = regret_bound_suite(options);
  } else if (suite == "lemma") {
    r = lemma_suite(options);
  } else {
    throw ConfigError("unknown verify suite '" + std::string(suite) +
                      "' (expected weights, coverage, regret-bound, lemma or g-count)");
  }
  r.report["suite"] = suite;
  r.report["passed"] = r.passed;
  return r;
}

}  // namespace hetbandit
