#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hetbandit/rng.hpp"

namespace hetbandit {

using ArmIndex = std::size_t;
using AgentIndex = std::size_t;

/// Arm means, true agent sensitivities and (optionally) the sensitivities the
/// planner believes. Immutable after construction.
class ProblemInstance {
 public:
  /// Validating constructor: means in (0,1), sensitivities in (0,1],
  /// 1 <= A <= N. Throws InvalidInstance.
  static ProblemInstance create(std::vector<double> arm_means,
                                std::vector<double> sensitivities,
                                std::optional<std::vector<double>> believed = std::nullopt);

  /// Relaxed constructor for tests: means and sensitivities may sit on the
  /// closed interval [0,1]. Sizes are still checked.
  static ProblemInstance create_degenerate(std::vector<double> arm_means,
                                           std::vector<double> sensitivities,
                                           std::optional<std::vector<double>> believed = std::nullopt);

  std::size_t num_arms() const noexcept { return means_.size(); }
  std::size_t num_agents() const noexcept { return sensitivities_.size(); }
  std::span<const double> arm_means() const noexcept { return means_; }
  std::span<const double> sensitivities() const noexcept { return sensitivities_; }
  /// The sensitivities policies act on; the true ones unless overridden.
  std::span<const double> believed_sensitivities() const noexcept {
    return believed_ ? std::span<const double>(*believed_) : std::span<const double>(sensitivities_);
  }
  bool has_believed_sensitivities() const noexcept { return believed_.has_value(); }

  /// Same instance with the believed sensitivities replaced (or cleared).
  ProblemInstance with_believed(std::optional<std::vector<double>> believed) const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;

 private:
  ProblemInstance(std::vector<double> means, std::vector<double> sens,
                  std::optional<std::vector<double>> believed, bool strict);

  std::vector<double> means_;
  std::vector<double> sensitivities_;
  std::optional<std::vector<double>> believed_;
  bool strict_ = true;
};

/// An injective agent -> arm map (a super-arm).
class Assignment {
 public:
  Assignment() = default;
  /// Throws InvalidAssignment on repeated arms.
  explicit Assignment(std::vector<ArmIndex> arm_of);

  std::size_t num_agents() const noexcept { return arm_of_.size(); }
  ArmIndex operator[](AgentIndex a) const noexcept { return arm_of_[a]; }
  std::span<const ArmIndex> arms() const noexcept { return arm_of_; }

  /// Throws InvalidAssignment unless this fits the instance.
  void check_against(const ProblemInstance& instance) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::vector<ArmIndex> arm_of_;
};

/// Binary reward per agent for one step.
struct RewardVector {
  std::vector<std::uint8_t> reward_of;

  std::size_t size() const noexcept { return reward_of.size(); }
  std::uint8_t operator[](AgentIndex a) const noexcept { return reward_of[a]; }
  std::uint32_t total() const noexcept;
};

/// Per-(agent, arm) pull counts and reward sums.
class PullLedger {
 public:
  PullLedger() = default;
  PullLedger(std::size_t num_agents, std::size_t num_arms);

  void record(const Assignment& assignment, const RewardVector& rewards);
  void clear();

  std::size_t num_agents() const noexcept { return num_agents_; }
  std::size_t num_arms() const noexcept { return num_arms_; }
  std::uint64_t step() const noexcept { return step_; }

  std::uint64_t count(AgentIndex a, ArmIndex n) const noexcept { return counts_[a * num_arms_ + n]; }
  std::uint64_t reward_sum(AgentIndex a, ArmIndex n) const noexcept {
    return reward_sums_[a * num_arms_ + n];
  }
  /// c_{t,n}: pulls of arm n by any agent.
  std::uint64_t arm_count(ArmIndex n) const noexcept;
  std::uint64_t total_pulls() const noexcept;

 private:
  std::size_t num_agents_ = 0;
  std::size_t num_arms_ = 0;
  std::uint64_t step_ = 0;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> reward_sums_;
};

/// Expected-regret record of one trial.
struct Trajectory {
  std::vector<Assignment> assignments;
  std::vector<double> increments;
  std::vector<double> cumulative_regret;
  /// For each step and agent, c_{t,f_t(a)} after that step's pulls
  /// (row-major, num_agents entries per step).
  std::vector<std::uint64_t> pulled_arm_counts;
  std::size_t num_agents = 0;

  std::size_t steps() const noexcept { return increments.size(); }
  double final_regret() const noexcept {
    return cumulative_regret.empty() ? 0.0 : cumulative_regret.back();
  }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Draws Y_a ~ Bern(s_a * mu_{f(a)}), consuming one uniform per agent in
/// ascending agent order.
RewardVector draw_rewards(const ProblemInstance& instance, const Assignment& assignment, Rng& rng);

/// Sum over agents of s_a * mu_{f(a)} with true sensitivities.
double expected_reward(const ProblemInstance& instance, const Assignment& assignment);

/// Rearrangement optimum: i-th highest true sensitivity on the i-th highest
/// mean, ties by ascending index on both sides.
Assignment optimal_assignment(const ProblemInstance& instance);

/// Expected-reward gap to the optimum, in true sensitivities.
double regret_increment(const ProblemInstance& instance, const Assignment& assignment);

/// Precomputed optimum so per-step regret is O(A).
class RegretMeter {
 public:
  explicit RegretMeter(const ProblemInstance& instance);
  double increment(const Assignment& assignment) const;
  double optimal_reward() const noexcept { return optimal_reward_; }

 private:
  ProblemInstance instance_;
  double optimal_reward_;
};

}  // namespace hetbandit
