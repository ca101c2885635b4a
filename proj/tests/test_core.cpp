#include <doctest.h>

#include <cmath>

#include "hetbandit/core.hpp"
#include "hetbandit/errors.hpp"
#include "oracles.hpp"

using namespace hetbandit;

namespace {

ProblemInstance hotel() {
  return ProblemInstance::create({0.72, 0.74, 0.93, 0.61}, {0.3, 0.5, 0.7, 0.9});
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_NOTHROW(ProblemInstance::create({0.2, 0.4}, {1.0}));
  CHECK_THROWS_AS(ProblemInstance::create({0.2}, {0.5, 0.5}), InvalidInstance);
  CHECK_THROWS_AS(ProblemInstance::create({0.0, 0.4}, {0.5}), InvalidInstance);
  CHECK_THROWS_AS(ProblemInstance::create({1.0, 0.4}, {0.5}), InvalidInstance);
  CHECK_THROWS_AS(ProblemInstance::create({0.3, 0.4}, {0.0}), InvalidInstance);
  CHECK_THROWS_AS(ProblemInstance::create({0.3, 0.4}, {1.1}), InvalidInstance);
  CHECK_THROWS_AS(ProblemInstance::create({0.3, 0.4}, {0.5}, std::vector<double>{0.5, 0.6}),
                  InvalidInstance);
  CHECK_THROWS_AS(ProblemInstance::create({}, {}), InvalidInstance);

  const auto degenerate = ProblemInstance::create_degenerate({0.0, 1.0}, {1.0, 1.0});
  CHECK(degenerate.num_arms() == 2);

  const auto inst = ProblemInstance::create({0.3, 0.4}, {0.5});
  CHECK_FALSE(inst.has_believed_sensitivities());
  CHECK(inst.believed_sensitivities()[0] == 0.5);
  const auto believed = inst.with_believed(std::vector<double>{0.7});
  CHECK(believed.believed_sensitivities()[0] == 0.7);
  CHECK(believed.sensitivities()[0] == 0.5);
}

TEST_CASE("assignment distinctness and range") {
  CHECK_THROWS_AS(Assignment({1, 1}), InvalidAssignment);
  const Assignment f({0, 3});
  CHECK_THROWS_AS(f.check_against(ProblemInstance::create({0.1, 0.2, 0.3}, {0.5, 0.5})),
                  InvalidAssignment);
  Rng rng(1);
  CHECK_THROWS_AS(draw_rewards(ProblemInstance::create({0.1, 0.2, 0.3}, {0.5, 0.5}), f, rng),
                  InvalidAssignment);
}

TEST_CASE("draw_rewards degenerate Bernoulli") {
  Rng rng(3);
  const auto always = ProblemInstance::create_degenerate({1.0, 0.0}, {1.0, 1.0});
  for (int i = 0; i < 1000; ++i) {
    const auto y = draw_rewards(always, Assignment({0, 1}), rng);
    CHECK(y[0] == 1);
    CHECK(y[1] == 0);
  }
}

TEST_CASE("draw_rewards frequency matches s * mu") {
  // 10^6 draws at p = 0.25: sd of the mean is sqrt(p(1-p)/n) ~ 4.3e-4;
  // 0.002 is about 4.6 sd.
  Rng rng(11);
  const auto inst = ProblemInstance::create({0.5, 0.3}, {0.5, 0.9});
  const Assignment f({0, 1});
  const int n = 1'000'000;
  long long hits0 = 0, hits1 = 0;
  for (int i = 0; i < n; ++i) {
    const auto y = draw_rewards(inst, f, rng);
    hits0 += y[0];
    hits1 += y[1];
  }
  const double p0 = static_cast<double>(hits0) / n;
  const double p1 = static_cast<double>(hits1) / n;
  CHECK(std::abs(p0 - 0.25) < 0.002);
  // 99% binomial interval half-width: 2.576 * sqrt(p(1-p)/n).
  const double q = 0.27;
  CHECK(std::abs(p1 - q) < 2.576 * std::sqrt(q * (1 - q) / n) * 1.5);
}

TEST_CASE("draw_rewards consumes one uniform per agent in agent order") {
  const auto inst = ProblemInstance::create({0.5, 0.6, 0.7}, {0.8, 0.9, 1.0});
  Rng a(42), b(42);
  const auto y = draw_rewards(inst, Assignment({2, 0, 1}), a);
  const double p[] = {0.8 * 0.7, 0.9 * 0.5, 1.0 * 0.6};
  for (int k = 0; k < 3; ++k) CHECK(y[k] == (b.uniform() < p[k] ? 1 : 0));
  CHECK(a() == b());
}

TEST_CASE("expected_reward") {
  CHECK(expected_reward(ProblemInstance::create({0.5}, {1.0}), Assignment({0})) == 0.5);
  // s=0.9 -> 0.93, s=0.7 -> 0.74, s=0.5 -> 0.72, s=0.3 -> 0.61.
  CHECK(expected_reward(hotel(), Assignment({3, 0, 1, 2})) == doctest::Approx(1.898).epsilon(1e-12));

  // Swapping two equal-sensitivity agents changes nothing, bit for bit.
  const auto covid = ProblemInstance::create({0.05, 0.1, 0.12, 0.15, 0.25, 0.3},
                                             {0.8, 0.8, 0.8, 0.95, 0.95});
  CHECK(expected_reward(covid, Assignment({0, 1, 2, 3, 4})) ==
        expected_reward(covid, Assignment({2, 1, 0, 4, 3})));
}

TEST_CASE("optimal_assignment on the hotel instance") {
  const Assignment f = optimal_assignment(hotel());
  CHECK(f[3] == 2);  // s = 0.9 -> mu = 0.93
  CHECK(f[2] == 1);  // s = 0.7 -> mu = 0.74
  CHECK(f[1] == 0);  // s = 0.5 -> mu = 0.72
  CHECK(f[0] == 3);  // s = 0.3 -> mu = 0.61
  const auto inst = hotel();
  CHECK(expected_reward(inst, f) ==
        doctest::Approx(oracle::brute_force_best_reward(inst.arm_means(), inst.sensitivities()))
            .epsilon(1e-12));
}

TEST_CASE("optimal_assignment single agent and equal sensitivities") {
  const auto one = ProblemInstance::create({0.2, 0.8, 0.5}, {0.4});
  CHECK(optimal_assignment(one)[0] == 1);

  const auto equal = ProblemInstance::create({0.2, 0.8, 0.5, 0.6}, {0.5, 0.5, 0.5});
  const auto f = optimal_assignment(equal);
  CHECK(expected_reward(equal, f) ==
        doctest::Approx(oracle::brute_force_best_reward(equal.arm_means(), equal.sensitivities())));
  // Ties break by ascending index on both sides.
  CHECK(f[0] == 1);
  CHECK(f[1] == 3);
  CHECK(f[2] == 2);
}

TEST_CASE("property: sort-based optimum matches brute force") {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    const auto inst = oracle::random_instance(rng, 6, i % 2 == 0);
    const double best = oracle::brute_force_best_reward(inst.arm_means(), inst.sensitivities());
    CHECK(std::abs(expected_reward(inst, optimal_assignment(inst)) - best) <= 1e-12);
  }
}

TEST_CASE("regret_increment") {
  const auto inst = hotel();
  CHECK(regret_increment(inst, optimal_assignment(inst)) == 0.0);

  const auto two = ProblemInstance::create({0.1, 0.5}, {0.9});
  CHECK(regret_increment(two, Assignment({0})) == doctest::Approx(0.36).epsilon(1e-12));

  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto r = oracle::random_instance(rng, 5);
    std::vector<std::size_t> arms(r.num_arms());
    std::iota(arms.begin(), arms.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(arms));
    arms.resize(r.num_agents());
    const Assignment f(arms);
    const double inc = regret_increment(r, f);
    CHECK(inc >= 0.0);
    CHECK(inc <= static_cast<double>(r.num_agents()));
  }
}

TEST_CASE("regret uses true sensitivities even with believed ones") {
  const auto truth = ProblemInstance::create({0.2, 0.9}, {0.3, 0.8});
  const auto believed = truth.with_believed(std::vector<double>{0.9, 0.1});
  const Assignment f({1, 0});
  CHECK(regret_increment(truth, f) == regret_increment(believed, f));
  CHECK(optimal_assignment(believed) == Assignment({0, 1}));
}

TEST_CASE("property: regret invariant under relabeling equal-sensitivity agents") {
  const auto inst = ProblemInstance::create({0.05, 0.1, 0.12, 0.15, 0.25, 0.3},
                                            {0.8, 0.8, 0.8, 0.95, 0.95});
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::size_t> arms = {0, 1, 2, 3, 4, 5};
    rng.shuffle(std::span<std::size_t>(arms));
    arms.resize(5);
    std::vector<std::size_t> relabeled = arms;
    std::swap(relabeled[0], relabeled[2]);
    std::swap(relabeled[3], relabeled[4]);
    CHECK(regret_increment(inst, Assignment(arms)) == regret_increment(inst, Assignment(relabeled)));
  }
}

TEST_CASE("pull ledger bookkeeping") {
  PullLedger ledger(2, 3);
  ledger.record(Assignment({0, 2}), RewardVector{{1, 0}});
  ledger.record(Assignment({2, 0}), RewardVector{{1, 1}});
  CHECK(ledger.step() == 2);
  CHECK(ledger.total_pulls() == 4);
  CHECK(ledger.count(0, 0) == 1);
  CHECK(ledger.count(0, 2) == 1);
  CHECK(ledger.reward_sum(1, 0) == 1);
  CHECK(ledger.arm_count(2) == 2);
  CHECK(ledger.arm_count(1) == 0);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t n = 0; n < 3; ++n) CHECK(ledger.reward_sum(a, n) <= ledger.count(a, n));
  ledger.clear();
  CHECK(ledger.total_pulls() == 0);
  CHECK(ledger.step() == 0);
}
