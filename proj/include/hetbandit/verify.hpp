#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hetbandit/core.hpp"
#include "hetbandit/policies.hpp"

namespace hetbandit {

/// Minimum-width weights found by solving the equality-constrained quadratic
///   minimize sum_a w_a^2 c_a  subject to  sum_a w_a s_a c_a = 1
/// through its KKT linear system. Agents with c_a = 0 get weight 0.
/// Throws NoDataError when every count is zero.
std::vector<double> oracle_min_width_weights(std::span<const double> sensitivities,
                                             std::span<const std::uint64_t> counts);

struct CoverageReport {
  std::uint64_t trials = 0;
  /// Trials in which |mu_hat - mu| >= eps for some arm at some step.
  std::uint64_t violations = 0;
  double empirical_coverage = 1.0;
};

struct CoverageOptions {
  std::uint64_t horizon = 200;
  std::uint64_t trials = 400;
  /// Confidence parameter the policy acts with.
  double delta = 0.05;
  std::uint64_t seed = 0;
  WidthMode width_mode = WidthMode::kFixedHorizon;
  /// Confidence parameter used to judge violations; defaults to delta.
  /// Changing only this re-checks identical trajectories with other widths.
  std::optional<double> check_delta;
};

/// Runs Min-Width and checks the concentration event for every pulled arm
/// after every step.
CoverageReport empirical_coverage(const ProblemInstance& instance, const CoverageOptions& options);

struct BoundReport {
  double observed_regret = 0.0;
  double bound_value = 0.0;
  bool satisfied = false;
};

/// A(N-1) + 2 sqrt(2 A N T ln(2 N G(T,A) / delta)) * max S / min S, using
/// the instance's true sensitivities.
double regret_bound(const ProblemInstance& instance, double delta, std::uint64_t horizon);

/// Compares R_T of the trajectory with regret_bound.
BoundReport check_regret_bound(const Trajectory& trajectory, const ProblemInstance& instance,
                               double delta, std::uint64_t horizon);

struct LemmaReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

/// sum_{t=N}^{T} sum_a 1/sqrt(c_{t,f_t(a)}) against 2 sqrt(A N T).
LemmaReport evaluate_pull_sum_lemma(const Trajectory& trajectory, std::size_t num_arms);
bool check_pull_sum_lemma(const Trajectory& trajectory, std::size_t num_arms);

}  // namespace hetbandit
