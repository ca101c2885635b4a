#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hetbandit {

inline constexpr std::string_view kVerifySuites[] = {"weights", "coverage", "regret-bound", "lemma",
                                                     "g-count"};

struct SuiteOptions {
  std::uint64_t cases = 1000;
  std::uint64_t max_t = 8;
  std::uint64_t max_a = 4;
  /// Empty means the suite's default scenario set.
  std::vector<std::string> scenarios;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> horizon;
  double delta = 0.05;
  std::uint64_t seed = 0;
};

struct SuiteResult {
  bool passed = false;
  nlohmann::json report;
};

/// Runs one named oracle suite. Throws ConfigError for unknown suites and
/// CatalogMiss for unknown scenarios.
SuiteResult run_verify_suite(std::string_view suite, const SuiteOptions& options);

}  // namespace hetbandit
