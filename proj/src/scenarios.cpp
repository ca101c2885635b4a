#include "hetbandit/scenarios.hpp"

#include <string>

#include "hetbandit/errors.hpp"

namespace hetbandit {

namespace {

using Values = std::vector<double>;

const Values kCovidMeans = {0.05, 0.1, 0.12, 0.15, 0.25, 0.3};
const Values kCovidSens = {0.8, 0.8, 0.8, 0.95, 0.95};
const Values kPoachingMeans = {0.1, 0.3, 0.5, 0.7, 0.9};

constexpr std::uint64_t kCovidHorizon = 300;
constexpr std::uint64_t kLongHorizon = 1000;
constexpr std::uint64_t kSyntheticHorizon = 5000;

struct SyntheticRow {
  const char* means;
  const char* sensitivities;
};

// Long-range synthetic grid: every (means, sensitivities) pair simulated.
constexpr SyntheticRow kSyntheticRows[] = {
    {"0.1,0.9", "0.1,0.9"},         {"0.1,0.9", "0.5,0.9"},
    {"0.1,0.9", "0.1,0.5"},         {"0.1,0.9", "0.4,0.6"},
    {"0.5,0.9", "0.1,0.9"},         {"0.5,0.9", "0.5,0.9"},
    {"0.5,0.9", "0.1,0.5"},         {"0.5,0.9", "0.4,0.6"},
    {"0.1,0.5", "0.1,0.9"},         {"0.1,0.5", "0.5,0.9"},
    {"0.1,0.5", "0.1,0.5"},         {"0.1,0.5", "0.4,0.6"},
    {"0.4,0.6", "0.1,0.9"},         {"0.4,0.6", "0.5,0.9"},
    {"0.4,0.6", "0.1,0.5"},         {"0.4,0.6", "0.4,0.6"},
    {"0.1,0.4,0.6", "0.1,0.9"},     {"0.1,0.4,0.6", "0.1,0.5,0.9"},
    {"0.1,0.2,0.9", "0.1,0.9"},     {"0.1,0.2,0.9", "0.5,0.9"},
    {"0.1,0.2,0.9", "0.1,0.5"},     {"0.1,0.2,0.9", "0.4,0.6"},
    {"0.1,0.2,0.9", "0.7,0.9"},     {"0.1,0.5,0.9", "0.1,0.9"},
    {"0.1,0.5,0.9", "0.5,0.9"},     {"0.1,0.5,0.9", "0.5,0.5"},
    {"0.1,0.5,0.9", "0.1,0.5,0.9"}, {"0.1,0.5,0.9", "0.1,0.2,0.9"},
    {"0.1,0.8,0.9", "0.1,0.9"},     {"0.1,0.8,0.9", "0.1,0.5"},
    {"0.1,0.8,0.9", "0.1,0.5,0.9"}, {"0.4,0.6,0.9", "0.5,0.9"},
    {"0.4,0.6,0.9", "0.4,0.6"},     {"0.4,0.6,0.9", "0.7,0.9"},
    {"0.4,0.6,0.9", "0.1,0.5,0.9"}, {"0.1,0.4,0.6,0.9", "0.7,0.9"},
};

Values parse_list(std::string_view text) {
  Values out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    out.push_back(std::stod(std::string(text.substr(start, comma - start))));
    start = comma + 1;
  }
  return out;
}

std::vector<Scenario> build_catalog() {
  std::vector<Scenario> out;
  auto add = [&out](std::string name, std::string description, ProblemInstance instance,
                    std::uint64_t horizon, std::uint64_t trials) {
    out.push_back({std::move(name), std::move(description), std::move(instance), horizon, trials});
  };

  add("covid", "COVID test allocation: 5 tests (3 antigen, 2 PCR) over 6 dorm floors",
      ProblemInstance::create(kCovidMeans, kCovidSens), kCovidHorizon, 90);
  add("hotel", "Hotel recommendation: 4 customer types matched to 4 hotels",
      ProblemInstance::create({0.72, 0.74, 0.93, 0.61}, {0.3, 0.5, 0.7, 0.9}), kLongHorizon, 90);
  add("poaching-2", "Poaching prevention: 2 ranger teams over 5 park areas",
      ProblemInstance::create(kPoachingMeans, {0.2, 0.3}), kLongHorizon, 90);
  add("poaching-3", "Poaching prevention: 3 ranger teams over 5 park areas",
      ProblemInstance::create(kPoachingMeans, {0.1, 0.2, 0.3}), kLongHorizon, 90);
  add("poaching-5", "Poaching prevention: 5 ranger teams over 5 park areas",
      ProblemInstance::create(kPoachingMeans, {0.1, 0.1, 0.1, 0.2, 0.3}), kLongHorizon, 90);
  add("covid-robust-over", "COVID allocation, planner overestimates every sensitivity",
      ProblemInstance::create(kCovidMeans, kCovidSens, Values{0.85, 0.85, 0.85, 0.98, 0.98}),
      kCovidHorizon, 500);
  add("covid-robust-under", "COVID allocation, planner underestimates every sensitivity",
      ProblemInstance::create(kCovidMeans, kCovidSens, Values{0.75, 0.75, 0.75, 0.9, 0.9}),
      kCovidHorizon, 500);
  add("covid-robust-mix", "COVID allocation, antigen underestimated and PCR overestimated",
      ProblemInstance::create(kCovidMeans, kCovidSens, Values{0.75, 0.75, 0.75, 0.98, 0.98}),
      kCovidHorizon, 500);
  for (const auto& row : kSyntheticRows) {
    Values means = parse_list(row.means);
    Values sens = parse_list(row.sensitivities);
    std::string name = std::string("synthetic-") + row.means + "-" + row.sensitivities;
    std::string description = "Synthetic: " + std::to_string(means.size()) + " arms, " +
                              std::to_string(sens.size()) + " agents";
    add(std::move(name), std::move(description),
        ProblemInstance::create(std::move(means), std::move(sens)), kSyntheticHorizon, 300);
  }
  return out;
}

}  // namespace

const std::vector<Scenario>& scenario_catalog() {
  static const std::vector<Scenario> catalog = build_catalog();
  return catalog;
}

const Scenario& find_scenario(std::string_view name) {
  for (const auto& s : scenario_catalog()) {
    if (s.name == name) return s;
  }
  std::string names;
  for (const auto& s : scenario_catalog()) {
    if (!names.empty()) names += ", ";
    names += s.name;
  }
  throw CatalogMiss("unknown scenario '" + std::string(name) + "'; valid names: " + names);
}

ExperimentConfig get_scenario(std::string_view name) {
  const Scenario& s = find_scenario(name);
  ExperimentConfig config{.instance = s.instance};
  config.horizon = s.default_horizon;
  config.trials = s.default_trials;
  return config;
}

}  // namespace hetbandit
