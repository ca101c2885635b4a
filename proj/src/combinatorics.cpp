#include "hetbandit/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hetbandit/errors.hpp"

namespace hetbandit {

namespace {

// Below this many factors the product form is summed directly; above it the
// three-lgamma difference is evaluated in extended precision.
constexpr std::uint64_t kDirectSumLimit = 4096;

}  // namespace

double log_add_exp(double x, double y) noexcept {
  if (x == -std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return x;
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    throw DomainError("log_binomial: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  }
  const std::uint64_t m = std::min(k, n - k);
  if (m == 0) return 0.0;
  if (m <= kDirectSumLimit) {
    // ln prod_{i=1}^m (n - m + i) / i, compensated.
    double sum = 0.0;
    double carry = 0.0;
    const auto base = static_cast<double>(n - m);
    for (std::uint64_t i = 1; i <= m; ++i) {
      const auto di = static_cast<double>(i);
      const double term = std::log1p(base / di);
      const double y = term - carry;
      const double t = sum + y;
      carry = (t - sum) - y;
      sum = t;
    }
    return sum;
  }
  const auto ln = static_cast<long double>(n);
  const auto lk = static_cast<long double>(k);
  return static_cast<double>(std::lgammal(ln + 1.0L) - std::lgammal(lk + 1.0L) -
                             std::lgammal(ln - lk + 1.0L));
}

LogGSeries::LogGSeries(std::uint64_t num_agents) : num_agents_(num_agents) {
  if (num_agents == 0) throw DomainError("G(T, A) needs A >= 1");
}

void LogGSeries::extend() {
  ++horizon_;
  const double term = log_binomial(horizon_ + num_agents_ - 1, num_agents_ - 1);
  log_total_ = horizon_ == 1 ? term : log_add_exp(log_total_, term);
}

LogCount LogGSeries::at(std::uint64_t horizon) {
  if (horizon == 0) throw DomainError("G(T, A) needs T >= 1");
  if (horizon < horizon_) reset();
  while (horizon_ < horizon) extend();
  return value();
}

void LogGSeries::reset() noexcept {
  horizon_ = 0;
  log_total_ = 0.0;
}

LogCount log_G(std::uint64_t horizon, std::uint64_t num_agents) {
  if (horizon == 0) throw DomainError("G(T, A) needs T >= 1");
  LogGSeries series(num_agents);
  return series.at(horizon);
}

LogCount brute_force_log_G(std::uint64_t horizon, std::uint64_t num_agents) {
  if (horizon == 0 || num_agents == 0) throw DomainError("G(T, A) needs T >= 1 and A >= 1");
  if (horizon > 12 || num_agents > 4) {
    throw EnumerationTooLarge("brute-force G enumeration is limited to T <= 12, A <= 4");
  }
  // Odometer over {0..T}^A.
  std::vector<std::uint64_t> digits(num_agents, 0);
  std::uint64_t count = 0;
  while (true) {
    std::uint64_t sum = 0;
    for (auto d : digits) sum += d;
    if (sum >= 1 && sum <= horizon) ++count;
    std::size_t pos = 0;
    while (pos < digits.size() && digits[pos] == horizon) digits[pos++] = 0;
    if (pos == digits.size()) break;
    ++digits[pos];
  }
  return {std::log(static_cast<double>(count))};
}

std::optional<std::uint64_t> count_superarms(std::uint64_t num_arms, std::uint64_t num_agents) {
  if (num_agents > num_arms) {
    throw DomainError("count_superarms: A = " + std::to_string(num_agents) + " exceeds N = " +
                      std::to_string(num_arms));
  }
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < num_agents; ++i) {
    if (__builtin_mul_overflow(total, num_arms - i, &total)) return std::nullopt;
  }
  return total;
}

void for_each_assignment(std::size_t num_arms, std::size_t num_agents,
                         const std::function<void(std::span<const ArmIndex>)>& visit,
                         std::uint64_t cap) {
  const auto count = count_superarms(num_arms, num_agents);
  if (!count || *count > cap) {
    throw EnumerationTooLarge("super-arm enumeration for N = " + std::to_string(num_arms) +
                              ", A = " + std::to_string(num_agents) + " exceeds the cap of " +
                              std::to_string(cap));
  }
  std::vector<ArmIndex> tuple(num_agents);
  std::vector<bool> used(num_arms, false);
  // Iterative depth-first walk; the arm tried at each depth increases, so
  // tuples come out in lexicographic order.
  std::size_t depth = 0;
  std::vector<ArmIndex> next(num_agents + 1, 0);
  if (num_agents == 0) {
    visit(tuple);
    return;
  }
  while (true) {
    ArmIndex n = next[depth];
    while (n < num_arms && used[n]) ++n;
    if (n == num_arms) {
      if (depth == 0) break;
      --depth;
      used[tuple[depth]] = false;
      next[depth] = tuple[depth] + 1;
      continue;
    }
    tuple[depth] = n;
    if (depth + 1 == num_agents) {
      visit(tuple);
      next[depth] = n + 1;
      continue;
    }
    used[n] = true;
    ++depth;
    next[depth] = 0;
  }
}

std::vector<Assignment> enumerate_assignments(std::size_t num_arms, std::size_t num_agents,
                                              std::uint64_t cap) {
  std::vector<Assignment> out;
  for_each_assignment(
      num_arms, num_agents,
      [&out](std::span<const ArmIndex> arms) {
        out.emplace_back(std::vector<ArmIndex>(arms.begin(), arms.end()));
      },
      cap);
  return out;
}

}  // namespace hetbandit
