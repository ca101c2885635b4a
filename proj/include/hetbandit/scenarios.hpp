#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hetbandit/core.hpp"
#include "hetbandit/simulator.hpp"

namespace hetbandit {

struct Scenario {
  std::string name;
  std::string description;
  ProblemInstance instance;
  std::uint64_t default_horizon;
  std::uint64_t default_trials;
};

/// Built-in instances: covid, hotel, poaching-{2,3,5},
/// covid-robust-{over,under,mix} and the synthetic-<means>-<sensitivities>
/// grid.
const std::vector<Scenario>& scenario_catalog();

/// Throws CatalogMiss listing the valid names.
const Scenario& find_scenario(std::string_view name);

/// Experiment skeleton for a scenario: all five policies, default horizon
/// and trials, delta 0.05, anytime widths, index ties, seed 0.
ExperimentConfig get_scenario(std::string_view name);

}  // namespace hetbandit
