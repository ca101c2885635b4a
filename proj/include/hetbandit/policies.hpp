#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hetbandit/combinatorics.hpp"
#include "hetbandit/core.hpp"
#include "hetbandit/rng.hpp"

namespace hetbandit {

enum class PolicyId { kMinWidth, kMinUcb, kNoSharing, kCucb, kSuperArmUcb };

inline constexpr PolicyId kAllPolicies[] = {PolicyId::kMinWidth, PolicyId::kMinUcb,
                                            PolicyId::kNoSharing, PolicyId::kCucb,
                                            PolicyId::kSuperArmUcb};

/// CLI spelling: min-width, min-ucb, no-sharing, cucb, ucb.
std::string_view policy_name(PolicyId id) noexcept;
/// Throws ConfigError for unknown names.
PolicyId parse_policy(std::string_view name);

/// Anytime widths use the current step t inside the logarithm; fixed-horizon
/// widths use the configured horizon T.
enum class WidthMode { kAnytime, kFixedHorizon };
enum class TieMode { kIndex, kRandom };

std::string_view width_mode_name(WidthMode mode) noexcept;
WidthMode parse_width_mode(std::string_view name);
std::string_view tie_mode_name(TieMode mode) noexcept;
TieMode parse_tie_mode(std::string_view name);

struct PolicyConfig {
  double delta = 0.05;
  WidthMode width_mode = WidthMode::kAnytime;
  /// Horizon T; required (>= 1) in fixed-horizon mode.
  std::uint64_t horizon = 0;
  TieMode tie_mode = TieMode::kIndex;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;

  /// The step count used inside confidence radii for an index computed at
  /// step t.
  std::uint64_t radius_step(std::uint64_t t) const;
  void validate() const;
};

/// UCB of an arm nobody has pulled. Orders above every finite value.
inline constexpr double kNeverPulled = std::numeric_limits<double>::infinity();
/// Mean reported for an arm with no observations.
inline constexpr double kUnpulledMean = 0.5;

struct ArmEstimate {
  double mean = kUnpulledMean;
  double width = kNeverPulled;

  double ucb() const noexcept { return mean + width; }
  bool pulled() const noexcept { return width != kNeverPulled; }
};

/// Agents by descending sensitivity; equal sensitivities keep ascending
/// agent order.
std::vector<AgentIndex> rank_agents(std::span<const double> sensitivities);

/// Index of the largest value among candidates. Ties go to the earliest
/// candidate, or to a uniformly random tied candidate when tie_rng is given.
std::size_t argmax_among(std::span<const double> values, std::span<const std::size_t> candidates,
                         Rng* tie_rng = nullptr);

/// Sequential matching: agents in ranking order each take the highest-UCB
/// arm still free. ranking must be a permutation of [0, A) with A <= N.
Assignment greedy_assign(std::span<const double> ucbs, std::span<const AgentIndex> ranking,
                         Rng* tie_rng = nullptr);

/// As greedy_assign, but each agent ranks arms by its own UCB row
/// (ucbs_by_agent[a] has one entry per arm).
Assignment greedy_assign_per_agent(const std::vector<std::vector<double>>& ucbs_by_agent,
                                   std::span<const AgentIndex> ranking, Rng* tie_rng = nullptr);

/// Closed-form minimum-width weights for one arm:
/// w_a = 1{c_a > 0} s_a / sum_b s_b^2 c_b. Throws NoDataError when all
/// counts are zero.
std::vector<double> min_width_weights(std::span<const double> sensitivities,
                                      std::span<const std::uint64_t> counts);

/// Common harness interface.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual PolicyId id() const noexcept = 0;
  /// Assignment to play at step t (1-based).
  virtual Assignment select(std::uint64_t t) = 0;
  virtual void observe(const Assignment& assignment, const RewardVector& rewards) = 0;
  /// Forget all observations and reseed internal randomness.
  virtual void reset(std::uint64_t seed) = 0;
  virtual const PullLedger& ledger() const noexcept = 0;
};

/// Shared heterogeneity-weighted estimator with a union bound over all
/// count vectors (the ln G(t, A) term).
class MinWidthPolicy final : public Policy {
 public:
  MinWidthPolicy(const ProblemInstance& instance, PolicyConfig config);

  PolicyId id() const noexcept override { return PolicyId::kMinWidth; }
  Assignment select(std::uint64_t t) override;
  void observe(const Assignment& assignment, const RewardVector& rewards) override;
  void reset(std::uint64_t seed) override;
  const PullLedger& ledger() const noexcept override { return ledger_; }

  /// Estimate and width of arm n as of step t (t >= 1).
  ArmEstimate estimate(ArmIndex n, std::uint64_t t);
  /// Per-arm UCBs as of step t (t >= 1); unpulled arms give kNeverPulled.
  std::vector<double> ucbs(std::uint64_t t);

  /// sum_a s~_a * reward_sums[a][n].
  std::span<const double> weighted_rewards() const noexcept { return weighted_rewards_; }
  /// sum_a s~_a^2 * counts[a][n].
  std::span<const double> weighted_counts() const noexcept { return weighted_counts_; }
  std::span<const AgentIndex> ranking() const noexcept { return ranking_; }
  /// ln(2 N G(T', A) / delta) with T' the radius step for t.
  double log_term(std::uint64_t t);

 private:
  void refresh_arm(ArmIndex n);

  std::vector<double> believed_;
  std::size_t num_arms_;
  PolicyConfig config_;
  std::vector<AgentIndex> ranking_;
  PullLedger ledger_;
  std::vector<double> weighted_rewards_;
  std::vector<double> weighted_counts_;
  LogGSeries log_g_;
  Rng tie_rng_;
};

/// Per-agent estimates used by No-Sharing and Min-UCB. Row a of the ledger
/// is the only input to agent a's estimates.
class PerAgentEstimator {
 public:
  PerAgentEstimator(const ProblemInstance& instance, PolicyConfig config);

  ArmEstimate estimate(AgentIndex a, ArmIndex n, std::uint64_t t) const;
  /// UCB_{t,a,n} for every arm.
  std::vector<double> agent_ucbs(AgentIndex a, std::uint64_t t) const;
  /// min over agents of agent_ucbs.
  std::vector<double> min_ucbs(std::uint64_t t) const;

  void observe(const Assignment& assignment, const RewardVector& rewards) {
    ledger_.record(assignment, rewards);
  }
  void clear() { ledger_.clear(); }
  const PullLedger& ledger() const noexcept { return ledger_; }
  std::span<const double> believed() const noexcept { return believed_; }

 private:
  std::vector<double> believed_;
  std::size_t num_arms_;
  PolicyConfig config_;
  PullLedger ledger_;
};

class NoSharingPolicy final : public Policy {
 public:
  NoSharingPolicy(const ProblemInstance& instance, PolicyConfig config);

  PolicyId id() const noexcept override { return PolicyId::kNoSharing; }
  Assignment select(std::uint64_t t) override;
  void observe(const Assignment& assignment, const RewardVector& rewards) override {
    estimator_.observe(assignment, rewards);
  }
  void reset(std::uint64_t seed) override;
  const PullLedger& ledger() const noexcept override { return estimator_.ledger(); }
  const PerAgentEstimator& estimator() const noexcept { return estimator_; }

 private:
  PolicyConfig config_;
  PerAgentEstimator estimator_;
  std::vector<AgentIndex> ranking_;
  Rng tie_rng_;
};

class MinUcbPolicy final : public Policy {
 public:
  MinUcbPolicy(const ProblemInstance& instance, PolicyConfig config);

  PolicyId id() const noexcept override { return PolicyId::kMinUcb; }
  Assignment select(std::uint64_t t) override;
  void observe(const Assignment& assignment, const RewardVector& rewards) override {
    estimator_.observe(assignment, rewards);
  }
  void reset(std::uint64_t seed) override;
  const PullLedger& ledger() const noexcept override { return estimator_.ledger(); }
  const PerAgentEstimator& estimator() const noexcept { return estimator_; }

 private:
  PolicyConfig config_;
  PerAgentEstimator estimator_;
  std::vector<AgentIndex> ranking_;
  Rng tie_rng_;
};

/// Sensitivity-blind combinatorial UCB: pooled per-arm statistics, top-A
/// arms, agents placed on them by a uniform random permutation.
class CucbPolicy final : public Policy {
 public:
  CucbPolicy(const ProblemInstance& instance, PolicyConfig config);

  PolicyId id() const noexcept override { return PolicyId::kCucb; }
  Assignment select(std::uint64_t t) override;
  void observe(const Assignment& assignment, const RewardVector& rewards) override;
  void reset(std::uint64_t seed) override;
  const PullLedger& ledger() const noexcept override { return ledger_; }

  ArmEstimate estimate(ArmIndex n, std::uint64_t t) const;
  std::vector<double> ucbs(std::uint64_t t) const;
  /// The A highest-UCB arms in selection order.
  std::vector<ArmIndex> top_arms(std::uint64_t t);

 private:
  std::size_t num_arms_;
  std::size_t num_agents_;
  PolicyConfig config_;
  PullLedger ledger_;
  std::vector<std::uint64_t> arm_pulls_;
  std::vector<std::uint64_t> arm_rewards_;
  Rng rng_;
};

/// Classic UCB over every super-arm, with the super-arm's total reward as
/// its payoff.
class SuperArmUcbPolicy final : public Policy {
 public:
  /// Throws EnumerationTooLarge when N!/(N-A)! exceeds the configured cap.
  SuperArmUcbPolicy(const ProblemInstance& instance, PolicyConfig config);

  PolicyId id() const noexcept override { return PolicyId::kSuperArmUcb; }
  Assignment select(std::uint64_t t) override;
  void observe(const Assignment& assignment, const RewardVector& rewards) override;
  void reset(std::uint64_t seed) override;
  const PullLedger& ledger() const noexcept override { return ledger_; }

  std::size_t num_superarms() const noexcept { return superarms_.size(); }
  const std::vector<Assignment>& superarms() const noexcept { return superarms_; }
  std::uint64_t pulls(std::size_t index) const noexcept { return pulls_[index]; }
  ArmEstimate estimate(std::size_t index, std::uint64_t t) const;
  std::vector<double> ucbs(std::uint64_t t) const;

 private:
  std::uint64_t key_of(std::span<const ArmIndex> arms) const noexcept;

  std::size_t num_arms_;
  PolicyConfig config_;
  std::vector<Assignment> superarms_;
  std::unordered_map<std::uint64_t, std::size_t> index_of_;
  double log_num_superarms_;
  PullLedger ledger_;
  std::vector<std::uint64_t> pulls_;
  std::vector<std::uint64_t> reward_sums_;
  Rng tie_rng_;
};

std::unique_ptr<Policy> make_policy(PolicyId id, const ProblemInstance& instance,
                                    const PolicyConfig& config);

}  // namespace hetbandit
