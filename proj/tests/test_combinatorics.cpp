#include <doctest.h>

#include <cmath>
#include <set>

#include "hetbandit/combinatorics.hpp"
#include "hetbandit/errors.hpp"
#include "oracles.hpp"

using namespace hetbandit;

TEST_CASE("log_binomial small values") {
  CHECK(log_binomial(5, 0) == 0.0);
  CHECK(log_binomial(5, 5) == 0.0);
  CHECK(log_binomial(4, 2) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
  CHECK(log_binomial(52, 5) == doctest::Approx(std::log(2598960.0)).epsilon(1e-14));
  CHECK_THROWS_AS(log_binomial(3, 4), DomainError);
}

TEST_CASE("log_binomial against exact big-integer binomials") {
  struct Case {
    std::uint64_t n, k;
  };
  const Case cases[] = {{52, 5},       {100, 50},       {1000, 3},        {10'000, 4999},
                        {10'000'000, 5}, {10'000'000, 100}, {10'000'000, 4096}, {10'000'000, 5000},
                        {200'000, 100'000}, {9'999'991, 17}};
  for (const auto& c : cases) {
    const double exact = oracle::log_of(oracle::binomial(c.n, c.k));
    const double got = log_binomial(c.n, c.k);
    INFO("n=" << c.n << " k=" << c.k);
    CHECK(std::abs(got - exact) <= 1e-12 * exact);
  }
}

TEST_CASE("log_G values") {
  CHECK(log_G(1, 1).value == 0.0);
  CHECK(log_G(2, 2).value == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  for (std::uint64_t t = 1; t <= 200; ++t) {
    CHECK(log_G(t, 1).value == doctest::Approx(std::log(static_cast<double>(t))).epsilon(1e-13));
  }
  CHECK_THROWS_AS(log_G(0, 2), DomainError);
  CHECK_THROWS_AS(log_G(3, 0), DomainError);
}

TEST_CASE("log_G matches enumeration and the hockey-stick identity") {
  for (std::uint64_t a = 1; a <= 4; ++a) {
    for (std::uint64_t t = 1; t <= 8; ++t) {
      const double fast = log_G(t, a).value;
      CHECK(std::abs(fast - brute_force_log_G(t, a).value) <= 1e-10);
      CHECK(fast < static_cast<double>(a) * std::log(static_cast<double>(t + 1)));
    }
  }
  // sum_{t=1}^T C(t+A-1, A-1) = C(T+A, A) - 1, evaluated exactly.
  for (std::uint64_t a : {2u, 3u, 5u, 8u}) {
    for (std::uint64_t t : {10u, 300u, 1000u, 10'000u}) {
      const double exact = oracle::log_of(oracle::binomial(t + a, a) - 1);
      CHECK(std::abs(log_G(t, a).value - exact) <= 1e-10 * exact);
    }
  }
}

TEST_CASE("log_G is finite at realistic horizons") {
  // T = 10^4, A = 5 gives G ~ 8e17, beyond exact double integers.
  const double v = log_G(10'000, 5).value;
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(oracle::log_of(oracle::binomial(10'005, 5) - 1)).epsilon(1e-12));
}

TEST_CASE("property: log_G strictly increases in T and A") {
  for (std::uint64_t a = 1; a <= 6; ++a) {
    LogGSeries series(a);
    double prev = -1.0;
    for (std::uint64_t t = 1; t <= 500; ++t) {
      series.extend();
      CHECK(series.value().value > prev);
      prev = series.value().value;
      if (a > 1 && t % 50 == 0) CHECK(log_G(t, a).value > log_G(t, a - 1).value);
    }
  }
}

TEST_CASE("LogGSeries extension equals fresh accumulation") {
  LogGSeries series(3);
  CHECK(series.at(50).value == log_G(50, 3).value);
  CHECK(series.at(75).value == log_G(75, 3).value);
  CHECK(series.at(10).value == log_G(10, 3).value);  // going back recomputes
}

TEST_CASE("brute_force_log_G guards") {
  CHECK(brute_force_log_G(3, 1).value == doctest::Approx(std::log(3.0)));
  CHECK(brute_force_log_G(2, 2).value == doctest::Approx(std::log(5.0)));
  CHECK_THROWS_AS(brute_force_log_G(13, 2), EnumerationTooLarge);
  CHECK_THROWS_AS(brute_force_log_G(5, 5), EnumerationTooLarge);
}

TEST_CASE("count_superarms") {
  CHECK(count_superarms(4, 4) == 24u);
  CHECK(count_superarms(6, 5) == 720u);
  CHECK(count_superarms(3, 1) == 3u);
  CHECK(count_superarms(7, 0) == 1u);
  CHECK_THROWS_AS(count_superarms(2, 3), DomainError);
  CHECK_FALSE(count_superarms(100, 30).has_value());
  CHECK(count_superarms(20, 20) == 2432902008176640000ull);
  CHECK_FALSE(count_superarms(21, 21).has_value());
}

TEST_CASE("enumerate_assignments") {
  const auto two = enumerate_assignments(2, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == Assignment({0, 1}));
  CHECK(two[1] == Assignment({1, 0}));

  CHECK(enumerate_assignments(5, 2).size() == 20);
  CHECK_THROWS_AS(enumerate_assignments(10, 7, 1000), EnumerationTooLarge);
  CHECK_THROWS_AS(enumerate_assignments(40, 20), EnumerationTooLarge);
}

TEST_CASE("property: enumeration is complete, distinct and lexicographic") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t a = 1; a <= n; ++a) {
      const auto all = enumerate_assignments(n, a);
      CHECK(all.size() == *count_superarms(n, a));
      std::set<Assignment> unique(all.begin(), all.end());
      CHECK(unique.size() == all.size());
      CHECK(std::is_sorted(all.begin(), all.end()));
      for (const auto& f : all)
        for (auto arm : f.arms()) CHECK(arm < n);
    }
  }
}
