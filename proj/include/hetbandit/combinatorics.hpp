#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hetbandit/core.hpp"

namespace hetbandit {

/// Natural log of a positive integer count.
struct LogCount {
  double value = 0.0;

  friend auto operator<=>(const LogCount&, const LogCount&) = default;
};

/// ln C(n, k). Throws DomainError when k > n.
double log_binomial(std::uint64_t n, std::uint64_t k);

/// Numerically stable ln(exp(x) + exp(y)).
double log_add_exp(double x, double y) noexcept;

/// Running ln G(T, A) where G(T, A) = sum_{t=1}^T C(t + A - 1, A - 1), the
/// number of per-agent pull-count vectors of one arm within horizon T.
/// Extending T by one costs a single log-binomial and a log-add.
class LogGSeries {
 public:
  explicit LogGSeries(std::uint64_t num_agents);

  std::uint64_t num_agents() const noexcept { return num_agents_; }
  std::uint64_t horizon() const noexcept { return horizon_; }

  /// ln G(horizon, A); only meaningful once horizon >= 1.
  LogCount value() const noexcept { return {log_total_}; }

  /// Advances to horizon + 1.
  void extend();
  /// ln G(T, A), extending as needed. T may not decrease below the cached
  /// horizon unless reset() is called.
  LogCount at(std::uint64_t horizon);
  void reset() noexcept;

 private:
  std::uint64_t num_agents_;
  std::uint64_t horizon_ = 0;
  double log_total_ = 0.0;
};

/// ln G(T, A) by log-domain accumulation. Requires T >= 1 and A >= 1.
LogCount log_G(std::uint64_t horizon, std::uint64_t num_agents);

/// ln G(T, A) by exhaustive enumeration of count vectors. Guarded to T <= 12,
/// A <= 4; throws EnumerationTooLarge beyond that.
LogCount brute_force_log_G(std::uint64_t horizon, std::uint64_t num_agents);

/// N! / (N - A)!, or nullopt when it does not fit in 64 bits. Throws
/// DomainError when A > N.
std::optional<std::uint64_t> count_superarms(std::uint64_t num_arms, std::uint64_t num_agents);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Calls visit for every injective A-tuple over [0, N), in lexicographic
/// order. Throws EnumerationTooLarge when the count exceeds cap.
void for_each_assignment(std::size_t num_arms, std::size_t num_agents,
                         const std::function<void(std::span<const ArmIndex>)>& visit,
                         std::uint64_t cap = kDefaultEnumerationCap);

/// Materialized form of for_each_assignment.
std::vector<Assignment> enumerate_assignments(std::size_t num_arms, std::size_t num_agents,
                                              std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace hetbandit
