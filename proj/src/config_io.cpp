#include "hetbandit/config_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "hetbandit/errors.hpp"
#include "hetbandit/scenarios.hpp"

namespace hetbandit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view text, const std::string& where) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(where + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

std::uint64_t parse_uint(std::string_view text, const std::string& where) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(where + ": '" + std::string(text) + "' is not a non-negative integer");
  }
  return value;
}

std::vector<double> parse_doubles(std::string_view text, const std::string& where) {
  std::vector<double> out;
  for (auto item : split_commas(text)) out.push_back(parse_double(item, where));
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

std::string join_doubles(std::span<const double> values) {
  std::vector<std::string> parts;
  for (double v : values) parts.push_back(format_exact(v));
  return join(parts);
}

}  // namespace

std::string format_exact(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string format_csv(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 10);
  return std::string(buf, ptr);
}

ConfigFile parse_config(std::string_view text) {
  struct Entry {
    std::string value;
    std::size_t line;
  };
  std::map<std::string, Entry> entries;
  // Placeholder instance; replaced once the keys are read.
  ConfigFile out{.config = {.instance = ProblemInstance::create({0.5}, {1.0})}, .scenario = {}, .manifest = {}};

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.rfind("manifest.", 0) == 0) {
      out.manifest[key] = value;
      continue;
    }
    if (entries.count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    entries[key] = {std::move(value), line_no};
  }

  auto where = [&](const std::string& key) {
    return "line " + std::to_string(entries.at(key).line) + " (" + key + ")";
  };
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return it->second.value;
  };

  ExperimentConfig& cfg = out.config;
  std::optional<std::vector<double>> means;
  std::optional<std::vector<double>> sens;
  std::optional<std::vector<double>> believed;
  if (auto name = take("scenario")) {
    try {
      cfg = get_scenario(*name);
    } catch (const CatalogMiss& e) {
      throw ConfigError(where("scenario") + ": " + e.what());
    }
    out.scenario = *name;
    means.emplace(cfg.instance.arm_means().begin(), cfg.instance.arm_means().end());
    sens.emplace(cfg.instance.sensitivities().begin(), cfg.instance.sensitivities().end());
    if (cfg.instance.has_believed_sensitivities()) {
      believed.emplace(cfg.instance.believed_sensitivities().begin(),
                       cfg.instance.believed_sensitivities().end());
    }
  }

  for (const auto& [key, entry] : entries) {
    const std::string& v = entry.value;
    if (key == "scenario") continue;
    if (key == "arm_means") {
      means = parse_doubles(v, where(key));
    } else if (key == "sensitivities") {
      sens = parse_doubles(v, where(key));
    } else if (key == "believed_sensitivities") {
      if (v.empty() || v == "none") {
        believed.reset();
      } else {
        believed = parse_doubles(v, where(key));
      }
    } else if (key == "policies") {
      cfg.policies.clear();
      try {
        for (auto name : split_commas(v)) cfg.policies.push_back(parse_policy(name));
      } catch (const ConfigError& e) {
        throw ConfigError(where(key) + ": " + e.what());
      }
    } else if (key == "horizon") {
      cfg.horizon = parse_uint(v, where(key));
    } else if (key == "trials") {
      cfg.trials = parse_uint(v, where(key));
    } else if (key == "seed") {
      cfg.master_seed = parse_uint(v, where(key));
    } else if (key == "delta") {
      cfg.delta = parse_double(v, where(key));
    } else if (key == "width_mode") {
      try {
        cfg.width_mode = parse_width_mode(v);
      } catch (const ConfigError& e) {
        throw ConfigError(where(key) + ": " + e.what());
      }
    } else if (key == "tie_mode") {
      try {
        cfg.tie_mode = parse_tie_mode(v);
      } catch (const ConfigError& e) {
        throw ConfigError(where(key) + ": " + e.what());
      }
    } else if (key == "enumeration_cap") {
      cfg.enumeration_cap = parse_uint(v, where(key));
    } else {
      throw ConfigError(where(key) + ": unknown key");
    }
  }

  if (!means || !sens) {
    throw ConfigError("config needs either 'scenario' or both 'arm_means' and 'sensitivities'");
  }
  try {
    cfg.instance = ProblemInstance::create(std::move(*means), std::move(*sens), std::move(believed));
  } catch (const InvalidInstance& e) {
    throw ConfigError(std::string("invalid instance: ") + e.what());
  }
  cfg.validate();
  return out;
}

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string serialize_config(const ConfigFile& file) {
  const ExperimentConfig& c = file.config;
  std::ostringstream out;
  if (file.scenario) out << "scenario = " << *file.scenario << '\n';
  out << "arm_means = " << join_doubles(c.instance.arm_means()) << '\n';
  out << "sensitivities = " << join_doubles(c.instance.sensitivities()) << '\n';
  out << "believed_sensitivities = "
      << (c.instance.has_believed_sensitivities() ? join_doubles(c.instance.believed_sensitivities())
                                                  : std::string("none"))
      << '\n';
  std::vector<std::string> names;
  for (PolicyId id : c.policies) names.emplace_back(policy_name(id));
  out << "policies = " << join(names) << '\n';
  out << "horizon = " << c.horizon << '\n';
  out << "trials = " << c.trials << '\n';
  out << "seed = " << c.master_seed << '\n';
  out << "delta = " << format_exact(c.delta) << '\n';
  out << "width_mode = " << width_mode_name(c.width_mode) << '\n';
  out << "tie_mode = " << tie_mode_name(c.tie_mode) << '\n';
  out << "enumeration_cap = " << c.enumeration_cap << '\n';
  for (const auto& [key, value] : file.manifest) out << key << " = " << value << '\n';
  return out.str();
}

}  // namespace hetbandit
