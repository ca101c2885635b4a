#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "hetbandit/simulator.hpp"

namespace hetbandit {

/// Flat `key = value` experiment description. Recognized keys:
///   scenario, arm_means, sensitivities, believed_sensitivities, policies,
///   horizon, trials, seed, delta, width_mode, tie_mode, enumeration_cap
/// plus free-form `manifest.*` keys carried through untouched. Arrays are
/// comma separated; `#` starts a comment line. When `scenario` is present the
/// scenario skeleton is loaded first and every other key overrides it.
struct ConfigFile {
  ExperimentConfig config;
  std::optional<std::string> scenario;
  std::map<std::string, std::string> manifest;
};

/// Throws ConfigError naming the offending line.
ConfigFile parse_config(std::string_view text);
ConfigFile load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ConfigFile& file);

/// Shortest representation that reads back to the same double.
std::string format_exact(double value);
/// Fixed 10-significant-digit form used in CSV output.
std::string format_csv(double value);

}  // namespace hetbandit
