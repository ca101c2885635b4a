#include "hetbandit/core.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hetbandit/errors.hpp"

namespace hetbandit {

namespace {

void validate(const std::vector<double>& means, const std::vector<double>& sens,
              const std::optional<std::vector<double>>& believed, bool strict) {
  if (means.empty()) throw InvalidInstance("instance needs at least one arm");
  if (sens.empty()) throw InvalidInstance("instance needs at least one agent");
  if (sens.size() > means.size()) {
    throw InvalidInstance("more agents (" + std::to_string(sens.size()) + ") than arms (" +
                          std::to_string(means.size()) + ")");
  }
  for (std::size_t n = 0; n < means.size(); ++n) {
    const double mu = means[n];
    const bool ok = strict ? (mu > 0.0 && mu < 1.0) : (mu >= 0.0 && mu <= 1.0);
    if (!ok) {
      throw InvalidInstance("arm mean " + std::to_string(n) + " = " + std::to_string(mu) +
                            (strict ? " is outside (0,1)" : " is outside [0,1]"));
    }
  }
  auto check_sens = [strict](const std::vector<double>& s, const char* what) {
    for (std::size_t a = 0; a < s.size(); ++a) {
      const bool ok = strict ? (s[a] > 0.0 && s[a] <= 1.0) : (s[a] >= 0.0 && s[a] <= 1.0);
      if (!ok) {
        throw InvalidInstance(std::string(what) + " " + std::to_string(a) + " = " +
                              std::to_string(s[a]) + " is outside (0,1]");
      }
    }
  };
  check_sens(sens, "sensitivity");
  if (believed) {
    if (believed->size() != sens.size()) {
      throw InvalidInstance("believed sensitivities must have one entry per agent");
    }
    check_sens(*believed, "believed sensitivity");
  }
}

// Sum in a canonical order so that relabeling agents cannot change the
// floating-point result.
double canonical_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double x : terms) total += x;
  return total;
}

}  // namespace

ProblemInstance::ProblemInstance(std::vector<double> means, std::vector<double> sens,
                                 std::optional<std::vector<double>> believed, bool strict)
    : means_(std::move(means)),
      sensitivities_(std::move(sens)),
      believed_(std::move(believed)),
      strict_(strict) {
  validate(means_, sensitivities_, believed_, strict_);
}

ProblemInstance ProblemInstance::create(std::vector<double> arm_means,
                                        std::vector<double> sensitivities,
                                        std::optional<std::vector<double>> believed) {
  return ProblemInstance(std::move(arm_means), std::move(sensitivities), std::move(believed), true);
}

ProblemInstance ProblemInstance::create_degenerate(std::vector<double> arm_means,
                                                   std::vector<double> sensitivities,
                                                   std::optional<std::vector<double>> believed) {
  return ProblemInstance(std::move(arm_means), std::move(sensitivities), std::move(believed), false);
}

ProblemInstance ProblemInstance::with_believed(std::optional<std::vector<double>> believed) const {
  return ProblemInstance(means_, sensitivities_, std::move(believed), strict_);
}

Assignment::Assignment(std::vector<ArmIndex> arm_of) : arm_of_(std::move(arm_of)) {
  std::vector<ArmIndex> sorted = arm_of_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidAssignment("two agents assigned to the same arm");
  }
}

void Assignment::check_against(const ProblemInstance& instance) const {
  if (arm_of_.size() != instance.num_agents()) {
    throw InvalidAssignment("assignment covers " + std::to_string(arm_of_.size()) +
                            " agents, instance has " + std::to_string(instance.num_agents()));
  }
  for (std::size_t a = 0; a < arm_of_.size(); ++a) {
    if (arm_of_[a] >= instance.num_arms()) {
      throw InvalidAssignment("agent " + std::to_string(a) + " assigned to arm " +
                              std::to_string(arm_of_[a]) + ", but there are only " +
                              std::to_string(instance.num_arms()) + " arms");
    }
  }
}

std::uint32_t RewardVector::total() const noexcept {
  std::uint32_t sum = 0;
  for (auto y : reward_of) sum += y;
  return sum;
}

PullLedger::PullLedger(std::size_t num_agents, std::size_t num_arms)
    : num_agents_(num_agents),
      num_arms_(num_arms),
      counts_(num_agents * num_arms, 0),
      reward_sums_(num_agents * num_arms, 0) {}

void PullLedger::record(const Assignment& assignment, const RewardVector& rewards) {
  for (AgentIndex a = 0; a < num_agents_; ++a) {
    const std::size_t cell = a * num_arms_ + assignment[a];
    ++counts_[cell];
    reward_sums_[cell] += rewards[a];
  }
  ++step_;
}

void PullLedger::clear() {
  std::fill(counts_.begin(), counts_.end(), 0);
  std::fill(reward_sums_.begin(), reward_sums_.end(), 0);
  step_ = 0;
}

std::uint64_t PullLedger::arm_count(ArmIndex n) const noexcept {
  std::uint64_t total = 0;
  for (AgentIndex a = 0; a < num_agents_; ++a) total += counts_[a * num_arms_ + n];
  return total;
}

std::uint64_t PullLedger::total_pulls() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

RewardVector draw_rewards(const ProblemInstance& instance, const Assignment& assignment, Rng& rng) {
  assignment.check_against(instance);
  const auto means = instance.arm_means();
  const auto sens = instance.sensitivities();
  RewardVector out;
  out.reward_of.resize(instance.num_agents());
  for (AgentIndex a = 0; a < instance.num_agents(); ++a) {
    out.reward_of[a] = rng.bernoulli(sens[a] * means[assignment[a]]) ? 1 : 0;
  }
  return out;
}

double expected_reward(const ProblemInstance& instance, const Assignment& assignment) {
  assignment.check_against(instance);
  const auto means = instance.arm_means();
  const auto sens = instance.sensitivities();
  std::vector<double> terms(instance.num_agents());
  for (AgentIndex a = 0; a < instance.num_agents(); ++a) terms[a] = sens[a] * means[assignment[a]];
  return canonical_sum(terms);
}

Assignment optimal_assignment(const ProblemInstance& instance) {
  const auto means = instance.arm_means();
  const auto sens = instance.sensitivities();
  std::vector<AgentIndex> agents(instance.num_agents());
  std::iota(agents.begin(), agents.end(), AgentIndex{0});
  std::stable_sort(agents.begin(), agents.end(),
                   [&](AgentIndex x, AgentIndex y) { return sens[x] > sens[y]; });
  std::vector<ArmIndex> arms(instance.num_arms());
  std::iota(arms.begin(), arms.end(), ArmIndex{0});
  std::stable_sort(arms.begin(), arms.end(),
                   [&](ArmIndex x, ArmIndex y) { return means[x] > means[y]; });

  std::vector<ArmIndex> arm_of(instance.num_agents());
  for (std::size_t i = 0; i < agents.size(); ++i) arm_of[agents[i]] = arms[i];
  return Assignment(std::move(arm_of));
}

double regret_increment(const ProblemInstance& instance, const Assignment& assignment) {
  return RegretMeter(instance).increment(assignment);
}

RegretMeter::RegretMeter(const ProblemInstance& instance)
    : instance_(instance),
      optimal_reward_(expected_reward(instance, optimal_assignment(instance))) {}

double RegretMeter::increment(const Assignment& assignment) const {
  // The optimum dominates every assignment; clamp rounding residue.
  return std::max(0.0, optimal_reward_ - expected_reward(instance_, assignment));
}

}  // namespace hetbandit
