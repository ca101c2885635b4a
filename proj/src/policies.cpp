#include "hetbandit/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hetbandit/errors.hpp"

namespace hetbandit {

namespace {

Rng* tie_source(const PolicyConfig& config, Rng& rng) {
  return config.tie_mode == TieMode::kRandom ? &rng : nullptr;
}

// Radius is computed for the completed steps before step t.
std::uint64_t completed_before(std::uint64_t t) { return t > 1 ? t - 1 : 1; }

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

}  // namespace

std::string_view policy_name(PolicyId id) noexcept {
  switch (id) {
    case PolicyId::kMinWidth: return "min-width";
    case PolicyId::kMinUcb: return "min-ucb";
    case PolicyId::kNoSharing: return "no-sharing";
    case PolicyId::kCucb: return "cucb";
    case PolicyId::kSuperArmUcb: return "ucb";
  }
  return "?";
}

PolicyId parse_policy(std::string_view name) {
  for (PolicyId id : kAllPolicies) {
    if (policy_name(id) == name) return id;
  }
  throw ConfigError("unknown policy '" + std::string(name) +
                    "' (expected min-width, min-ucb, no-sharing, cucb or ucb)");
}

std::string_view width_mode_name(WidthMode mode) noexcept {
  return mode == WidthMode::kAnytime ? "anytime" : "fixed-horizon";
}

WidthMode parse_width_mode(std::string_view name) {
  if (name == "anytime") return WidthMode::kAnytime;
  if (name == "fixed-horizon" || name == "fixed") return WidthMode::kFixedHorizon;
  throw ConfigError("unknown width mode '" + std::string(name) + "' (expected anytime or fixed-horizon)");
}

std::string_view tie_mode_name(TieMode mode) noexcept {
  return mode == TieMode::kIndex ? "index" : "random";
}

TieMode parse_tie_mode(std::string_view name) {
  if (name == "index") return TieMode::kIndex;
  if (name == "random") return TieMode::kRandom;
  throw ConfigError("unknown tie mode '" + std::string(name) + "' (expected index or random)");
}

std::uint64_t PolicyConfig::radius_step(std::uint64_t t) const {
  if (width_mode == WidthMode::kFixedHorizon) return horizon;
  return std::max<std::uint64_t>(t, 1);
}

void PolicyConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ConfigError("delta must lie in (0,1), got " + std::to_string(delta));
  }
  if (width_mode == WidthMode::kFixedHorizon && horizon == 0) {
    throw ConfigError("fixed-horizon widths need a horizon >= 1");
  }
}

std::vector<AgentIndex> rank_agents(std::span<const double> sensitivities) {
  auto order = all_indices(sensitivities.size());
  std::stable_sort(order.begin(), order.end(), [&](AgentIndex x, AgentIndex y) {
    return sensitivities[x] > sensitivities[y];
  });
  return order;
}

std::size_t argmax_among(std::span<const double> values, std::span<const std::size_t> candidates,
                         Rng* tie_rng) {
  std::size_t best = candidates.front();
  std::uint64_t ties = 1;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const std::size_t c = candidates[i];
    if (values[c] > values[best]) {
      best = c;
      ties = 1;
    } else if (tie_rng != nullptr && values[c] == values[best]) {
      // Reservoir choice among equal maxima.
      ++ties;
      if (tie_rng->below(ties) == 0) best = c;
    }
  }
  return best;
}

namespace {

template <typename UcbOf>
Assignment greedy_core(std::size_t num_arms, std::span<const AgentIndex> ranking, UcbOf&& ucb_of,
                       Rng* tie_rng) {
  std::vector<ArmIndex> free_arms = all_indices(num_arms);
  std::vector<ArmIndex> arm_of(ranking.size());
  for (AgentIndex a : ranking) {
    const std::size_t n = argmax_among(ucb_of(a), free_arms, tie_rng);
    arm_of[a] = n;
    free_arms.erase(std::find(free_arms.begin(), free_arms.end(), n));
  }
  return Assignment(std::move(arm_of));
}

}  // namespace

Assignment greedy_assign(std::span<const double> ucbs, std::span<const AgentIndex> ranking,
                         Rng* tie_rng) {
  if (ranking.size() > ucbs.size()) throw DomainError("greedy_assign: more agents than arms");
  return greedy_core(
      ucbs.size(), ranking, [&](AgentIndex) { return ucbs; }, tie_rng);
}

Assignment greedy_assign_per_agent(const std::vector<std::vector<double>>& ucbs_by_agent,
                                   std::span<const AgentIndex> ranking, Rng* tie_rng) {
  if (ucbs_by_agent.empty()) return Assignment();
  const std::size_t num_arms = ucbs_by_agent.front().size();
  if (ranking.size() > num_arms) throw DomainError("greedy_assign: more agents than arms");
  return greedy_core(
      num_arms, ranking,
      [&](AgentIndex a) { return std::span<const double>(ucbs_by_agent[a]); }, tie_rng);
}

std::vector<double> min_width_weights(std::span<const double> sensitivities,
                                      std::span<const std::uint64_t> counts) {
  if (sensitivities.size() != counts.size()) {
    throw DomainError("min_width_weights: one count per agent expected");
  }
  double denom = 0.0;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    denom += sensitivities[a] * sensitivities[a] * static_cast<double>(counts[a]);
  }
  if (denom == 0.0) throw NoDataError("min_width_weights: arm has no pulls");
  std::vector<double> w(counts.size(), 0.0);
  for (std::size_t a = 0; a < counts.size(); ++a) {
    if (counts[a] > 0) w[a] = sensitivities[a] / denom;
  }
  return w;
}

// ---------------------------------------------------------------- Min-Width

MinWidthPolicy::MinWidthPolicy(const ProblemInstance& instance, PolicyConfig config)
    : believed_(instance.believed_sensitivities().begin(), instance.believed_sensitivities().end()),
      num_arms_(instance.num_arms()),
      config_(config),
      ranking_(rank_agents(believed_)),
      ledger_(instance.num_agents(), instance.num_arms()),
      weighted_rewards_(instance.num_arms(), 0.0),
      weighted_counts_(instance.num_arms(), 0.0),
      log_g_(instance.num_agents()) {
  config_.validate();
}

double MinWidthPolicy::log_term(std::uint64_t t) {
  const double log_g = log_g_.at(config_.radius_step(t)).value;
  return std::log(2.0 * static_cast<double>(num_arms_)) + log_g - std::log(config_.delta);
}

ArmEstimate MinWidthPolicy::estimate(ArmIndex n, std::uint64_t t) {
  const double v = weighted_counts_[n];
  if (v == 0.0) return {};
  return {weighted_rewards_[n] / v, std::sqrt(log_term(t) / (2.0 * v))};
}

std::vector<double> MinWidthPolicy::ucbs(std::uint64_t t) {
  std::vector<double> out(num_arms_);
  for (ArmIndex n = 0; n < num_arms_; ++n) out[n] = estimate(n, t).ucb();
  return out;
}

Assignment MinWidthPolicy::select(std::uint64_t t) {
  return greedy_assign(ucbs(completed_before(t)), ranking_, tie_source(config_, tie_rng_));
}

void MinWidthPolicy::observe(const Assignment& assignment, const RewardVector& rewards) {
  ledger_.record(assignment, rewards);
  for (ArmIndex n : assignment.arms()) refresh_arm(n);
}

// Recomputed from integer ledger cells so the weights stay exactly
// consistent with the counts, however long the run.
void MinWidthPolicy::refresh_arm(ArmIndex n) {
  double w = 0.0;
  double v = 0.0;
  for (AgentIndex a = 0; a < believed_.size(); ++a) {
    const double s = believed_[a];
    w += s * static_cast<double>(ledger_.reward_sum(a, n));
    v += s * s * static_cast<double>(ledger_.count(a, n));
  }
  weighted_rewards_[n] = w;
  weighted_counts_[n] = v;
}

void MinWidthPolicy::reset(std::uint64_t seed) {
  ledger_.clear();
  std::fill(weighted_rewards_.begin(), weighted_rewards_.end(), 0.0);
  std::fill(weighted_counts_.begin(), weighted_counts_.end(), 0.0);
  tie_rng_.reseed(seed);
}

// ---------------------------------------------------------- per-agent UCBs

PerAgentEstimator::PerAgentEstimator(const ProblemInstance& instance, PolicyConfig config)
    : believed_(instance.believed_sensitivities().begin(), instance.believed_sensitivities().end()),
      num_arms_(instance.num_arms()),
      config_(config),
      ledger_(instance.num_agents(), instance.num_arms()) {
  config_.validate();
}

ArmEstimate PerAgentEstimator::estimate(AgentIndex a, ArmIndex n, std::uint64_t t) const {
  const std::uint64_t c = ledger_.count(a, n);
  if (c == 0) return {};
  const double s = believed_[a];
  const double pulls = static_cast<double>(c);
  const double log_term =
      std::log(2.0 * static_cast<double>(believed_.size()) * static_cast<double>(num_arms_) *
               static_cast<double>(config_.radius_step(t)) / config_.delta);
  return {static_cast<double>(ledger_.reward_sum(a, n)) / (s * pulls),
          std::sqrt(log_term / (2.0 * pulls)) / s};
}

std::vector<double> PerAgentEstimator::agent_ucbs(AgentIndex a, std::uint64_t t) const {
  std::vector<double> out(num_arms_);
  for (ArmIndex n = 0; n < num_arms_; ++n) out[n] = estimate(a, n, t).ucb();
  return out;
}

std::vector<double> PerAgentEstimator::min_ucbs(std::uint64_t t) const {
  std::vector<double> out(num_arms_, kNeverPulled);
  for (AgentIndex a = 0; a < believed_.size(); ++a) {
    const auto row = agent_ucbs(a, t);
    for (ArmIndex n = 0; n < num_arms_; ++n) out[n] = std::min(out[n], row[n]);
  }
  return out;
}

NoSharingPolicy::NoSharingPolicy(const ProblemInstance& instance, PolicyConfig config)
    : config_(config),
      estimator_(instance, config),
      ranking_(rank_agents(instance.believed_sensitivities())) {}

Assignment NoSharingPolicy::select(std::uint64_t t) {
  const std::uint64_t at = completed_before(t);
  std::vector<std::vector<double>> rows(ranking_.size());
  for (AgentIndex a = 0; a < rows.size(); ++a) rows[a] = estimator_.agent_ucbs(a, at);
  return greedy_assign_per_agent(rows, ranking_, tie_source(config_, tie_rng_));
}

void NoSharingPolicy::reset(std::uint64_t seed) {
  estimator_.clear();
  tie_rng_.reseed(seed);
}

MinUcbPolicy::MinUcbPolicy(const ProblemInstance& instance, PolicyConfig config)
    : config_(config),
      estimator_(instance, config),
      ranking_(rank_agents(instance.believed_sensitivities())) {}

Assignment MinUcbPolicy::select(std::uint64_t t) {
  return greedy_assign(estimator_.min_ucbs(completed_before(t)), ranking_,
                       tie_source(config_, tie_rng_));
}

void MinUcbPolicy::reset(std::uint64_t seed) {
  estimator_.clear();
  tie_rng_.reseed(seed);
}

// --------------------------------------------------------------------- CUCB

CucbPolicy::CucbPolicy(const ProblemInstance& instance, PolicyConfig config)
    : num_arms_(instance.num_arms()),
      num_agents_(instance.num_agents()),
      config_(config),
      ledger_(instance.num_agents(), instance.num_arms()),
      arm_pulls_(instance.num_arms(), 0),
      arm_rewards_(instance.num_arms(), 0) {
  config_.validate();
}

ArmEstimate CucbPolicy::estimate(ArmIndex n, std::uint64_t t) const {
  if (arm_pulls_[n] == 0) return {};
  const double pulls = static_cast<double>(arm_pulls_[n]);
  const double log_term = std::log(2.0 * static_cast<double>(num_arms_) *
                                   static_cast<double>(config_.radius_step(t)) / config_.delta);
  return {static_cast<double>(arm_rewards_[n]) / pulls, std::sqrt(log_term / (2.0 * pulls))};
}

std::vector<double> CucbPolicy::ucbs(std::uint64_t t) const {
  std::vector<double> out(num_arms_);
  for (ArmIndex n = 0; n < num_arms_; ++n) out[n] = estimate(n, t).ucb();
  return out;
}

std::vector<ArmIndex> CucbPolicy::top_arms(std::uint64_t t) {
  const auto values = ucbs(t);
  std::vector<ArmIndex> candidates = all_indices(num_arms_);
  std::vector<ArmIndex> chosen;
  chosen.reserve(num_agents_);
  Rng* ties = tie_source(config_, rng_);
  for (std::size_t k = 0; k < num_agents_; ++k) {
    const ArmIndex n = argmax_among(values, candidates, ties);
    chosen.push_back(n);
    candidates.erase(std::find(candidates.begin(), candidates.end(), n));
  }
  return chosen;
}

Assignment CucbPolicy::select(std::uint64_t t) {
  std::vector<ArmIndex> arms = top_arms(completed_before(t));
  rng_.shuffle(std::span<ArmIndex>(arms));
  return Assignment(std::move(arms));
}

void CucbPolicy::observe(const Assignment& assignment, const RewardVector& rewards) {
  ledger_.record(assignment, rewards);
  for (AgentIndex a = 0; a < assignment.num_agents(); ++a) {
    ++arm_pulls_[assignment[a]];
    arm_rewards_[assignment[a]] += rewards[a];
  }
}

void CucbPolicy::reset(std::uint64_t seed) {
  ledger_.clear();
  std::fill(arm_pulls_.begin(), arm_pulls_.end(), 0);
  std::fill(arm_rewards_.begin(), arm_rewards_.end(), 0);
  rng_.reseed(seed);
}

// ---------------------------------------------------------- super-arm UCB

SuperArmUcbPolicy::SuperArmUcbPolicy(const ProblemInstance& instance, PolicyConfig config)
    : num_arms_(instance.num_arms()),
      config_(config),
      superarms_(enumerate_assignments(instance.num_arms(), instance.num_agents(),
                                       config.enumeration_cap)),
      log_num_superarms_(0.0),
      ledger_(instance.num_agents(), instance.num_arms()),
      pulls_(superarms_.size(), 0),
      reward_sums_(superarms_.size(), 0) {
  config_.validate();
  for (std::size_t i = 0; i < instance.num_agents(); ++i) {
    log_num_superarms_ += std::log(static_cast<double>(num_arms_ - i));
  }
  index_of_.reserve(superarms_.size());
  for (std::size_t i = 0; i < superarms_.size(); ++i) index_of_.emplace(key_of(superarms_[i].arms()), i);
}

std::uint64_t SuperArmUcbPolicy::key_of(std::span<const ArmIndex> arms) const noexcept {
  std::uint64_t key = 0;
  for (ArmIndex n : arms) key = key * num_arms_ + n;
  return key;
}

ArmEstimate SuperArmUcbPolicy::estimate(std::size_t index, std::uint64_t t) const {
  if (pulls_[index] == 0) return {};
  const double pulls = static_cast<double>(pulls_[index]);
  const double log_term = std::log(2.0) + std::log(static_cast<double>(config_.radius_step(t))) +
                          log_num_superarms_ - std::log(config_.delta);
  return {static_cast<double>(reward_sums_[index]) / pulls, std::sqrt(log_term / (2.0 * pulls))};
}

std::vector<double> SuperArmUcbPolicy::ucbs(std::uint64_t t) const {
  std::vector<double> out(superarms_.size());
  for (std::size_t i = 0; i < superarms_.size(); ++i) out[i] = estimate(i, t).ucb();
  return out;
}

Assignment SuperArmUcbPolicy::select(std::uint64_t t) {
  const auto values = ucbs(completed_before(t));
  const auto candidates = all_indices(superarms_.size());
  return superarms_[argmax_among(values, candidates, tie_source(config_, tie_rng_))];
}

void SuperArmUcbPolicy::observe(const Assignment& assignment, const RewardVector& rewards) {
  ledger_.record(assignment, rewards);
  const auto it = index_of_.find(key_of(assignment.arms()));
  if (it == index_of_.end()) throw InvalidAssignment("assignment is not a tracked super-arm");
  ++pulls_[it->second];
  reward_sums_[it->second] += rewards.total();
}

void SuperArmUcbPolicy::reset(std::uint64_t seed) {
  ledger_.clear();
  std::fill(pulls_.begin(), pulls_.end(), 0);
  std::fill(reward_sums_.begin(), reward_sums_.end(), 0);
  tie_rng_.reseed(seed);
}

std::unique_ptr<Policy> make_policy(PolicyId id, const ProblemInstance& instance,
                                    const PolicyConfig& config) {
  switch (id) {
    case PolicyId::kMinWidth: return std::make_unique<MinWidthPolicy>(instance, config);
    case PolicyId::kMinUcb: return std::make_unique<MinUcbPolicy>(instance, config);
    case PolicyId::kNoSharing: return std::make_unique<NoSharingPolicy>(instance, config);
    case PolicyId::kCucb: return std::make_unique<CucbPolicy>(instance, config);
    case PolicyId::kSuperArmUcb: return std::make_unique<SuperArmUcbPolicy>(instance, config);
  }
  throw ConfigError("unknown policy id");
}

}  // namespace hetbandit
