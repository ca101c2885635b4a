#include "hetbandit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "hetbandit/config_io.hpp"
#include "hetbandit/errors.hpp"
#include "hetbandit/report.hpp"
#include "hetbandit/scenarios.hpp"
#include "hetbandit/simulator.hpp"
#include "hetbandit/verify_suites.hpp"

namespace hetbandit {

namespace {

namespace fs = std::filesystem;

struct RunArgs {
  std::string scenario;
  std::string config_path;
  std::string policies;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<double> delta;
  std::string width_mode;
  std::string tie_mode;
  std::string out_dir = "out";
};

struct VerifyArgs {
  std::string suite;
  SuiteOptions options;
  std::string scenarios;
  std::string report_path;
};

struct ListArgs {
  std::string format = "text";
};

unsigned thread_budget() {
  if (const char* env = std::getenv("HETBANDIT_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + path.string() + "'");
  file << bytes;
  return sha256_hex(bytes);
}

ConfigFile resolve_run_config(const RunArgs& args) {
  if (args.scenario.empty() == args.config_path.empty()) {
    throw ConfigError("run needs exactly one of --scenario or --config");
  }
  ConfigFile file = args.config_path.empty()
                        ? ConfigFile{.config = get_scenario(args.scenario), .scenario = args.scenario, .manifest = {}}
                        : load_config(args.config_path);
  file.manifest.clear();
  ExperimentConfig& c = file.config;
  if (!args.policies.empty()) {
    c.policies.clear();
    for (const auto& name : split_list(args.policies)) c.policies.push_back(parse_policy(name));
  }
  if (args.trials) c.trials = *args.trials;
  if (args.horizon) c.horizon = *args.horizon;
  if (args.seed) c.master_seed = *args.seed;
  if (args.delta) c.delta = *args.delta;
  if (!args.width_mode.empty()) c.width_mode = parse_width_mode(args.width_mode);
  if (!args.tie_mode.empty()) c.tie_mode = parse_tie_mode(args.tie_mode);
  c.validate();
  return file;
}

int cmd_run(const RunArgs& args, std::ostream& out) {
  ConfigFile file = resolve_run_config(args);
  const AggregateResult result = run_experiment(file.config, {.threads = thread_budget()});

  const fs::path dir(args.out_dir);
  fs::create_directories(dir);
  std::ostringstream curves;
  write_curves_csv(result, curves);
  std::ostringstream summary;
  write_summary_csv(result, summary);
  file.manifest["manifest.sha256.curves_csv"] = write_file(dir / "curves.csv", curves.str());
  file.manifest["manifest.sha256.summary_csv"] = write_file(dir / "summary.csv", summary.str());
  write_file(dir / "manifest.txt", serialize_config(file));

  out << std::left << std::setw(12) << "policy" << std::right << std::setw(16) << "final regret"
      << std::setw(12) << "se" << '\n';
  for (const auto& curve : result.curves) {
    out << std::left << std::setw(12) << policy_name(curve.policy) << std::right << std::fixed
        << std::setprecision(3) << std::setw(16) << curve.final_mean() << std::setw(12)
        << curve.final_se() << '\n';
  }
  out.unsetf(std::ios::fixed);
  out << "wrote " << (dir / "curves.csv").string() << ", " << (dir / "summary.csv").string() << ", "
      << (dir / "manifest.txt").string() << '\n';
  return kExitOk;
}

int cmd_verify(VerifyArgs args, std::ostream& out) {
  args.options.scenarios = split_list(args.scenarios);
  const SuiteResult result = run_verify_suite(args.suite, args.options);
  const std::string text = result.report.dump(2) + "\n";
  if (args.report_path.empty()) {
    out << text;
  } else {
    write_file(args.report_path, text);
    out << args.suite << ": " << (result.passed ? "pass" : "FAIL") << '\n';
  }
  return result.passed ? kExitOk : kExitVerificationFailed;
}

std::string join_values(std::span<const double> values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ',';
    out += format_exact(v);
  }
  return out;
}

int cmd_list(const ListArgs& args, std::ostream& out) {
  const auto& catalog = scenario_catalog();
  if (args.format == "json") {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& s : catalog) {
      nlohmann::json item = {{"name", s.name},
                             {"description", s.description},
                             {"num_arms", s.instance.num_arms()},
                             {"num_agents", s.instance.num_agents()},
                             {"arm_means", std::vector<double>(s.instance.arm_means().begin(),
                                                               s.instance.arm_means().end())},
                             {"sensitivities", std::vector<double>(s.instance.sensitivities().begin(),
                                                                   s.instance.sensitivities().end())},
                             {"default_horizon", s.default_horizon},
                             {"default_trials", s.default_trials}};
      if (s.instance.has_believed_sensitivities()) {
        item["believed_sensitivities"] = std::vector<double>(
            s.instance.believed_sensitivities().begin(), s.instance.believed_sensitivities().end());
      }
      items.push_back(std::move(item));
    }
    out << items.dump(2) << '\n';
    return kExitOk;
  }
  if (args.format != "text") throw ConfigError("unknown list format '" + args.format + "'");
  for (const auto& s : catalog) {
    out << s.name << "  N=" << s.instance.num_arms() << " A=" << s.instance.num_agents()
        << " mu={" << join_values(s.instance.arm_means()) << "} S={"
        << join_values(s.instance.sensitivities()) << '}';
    if (s.instance.has_believed_sensitivities()) {
      out << " S~={" << join_values(s.instance.believed_sensitivities()) << '}';
    }
    out << " T=" << s.default_horizon << " trials=" << s.default_trials << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heterogeneous-agent bandit simulator", "hetbandit"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Simulate policies on a scenario or config file");
  run_cmd->add_option("--scenario", run.scenario, "Built-in scenario name");
  run_cmd->add_option("--config", run.config_path, "Config or manifest file");
  run_cmd->add_option("--policies", run.policies, "Comma list: min-width,min-ucb,no-sharing,cucb,ucb");
  run_cmd->add_option("--trials", run.trials, "Independent trials per policy");
  run_cmd->add_option("--horizon", run.horizon, "Steps per trial");
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--delta", run.delta, "Confidence parameter in (0,1)");
  run_cmd->add_option("--width-mode", run.width_mode, "anytime or fixed-horizon");
  run_cmd->add_option("--tie-mode", run.tie_mode, "index or random");
  run_cmd->add_option("--out", run.out_dir, "Output directory")->capture_default_str();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run an oracle verification suite");
  verify_cmd->add_option("suite", verify.suite, "weights, coverage, regret-bound, lemma or g-count")
      ->required();
  verify_cmd->add_option("--cases", verify.options.cases, "Random cases (weights)");
  verify_cmd->add_option("--max-t", verify.options.max_t, "Largest T (g-count)");
  verify_cmd->add_option("--max-a", verify.options.max_a, "Largest A (g-count)");
  verify_cmd->add_option("--scenario", verify.scenarios, "Comma list of scenarios");
  verify_cmd->add_option("--trials", verify.options.trials, "Trials or runs per scenario");
  verify_cmd->add_option("--horizon", verify.options.horizon, "Steps per trial");
  verify_cmd->add_option("--delta", verify.options.delta, "Confidence parameter");
  verify_cmd->add_option("--seed", verify.options.seed, "Master seed");
  verify_cmd->add_option("--report", verify.report_path, "Write the JSON report here instead of stdout");

  ListArgs list;
  auto* list_cmd = app.add_subcommand("list", "List built-in scenarios");
  list_cmd->add_option("--format", list.format, "text or json")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out);
    if (list_cmd->parsed()) return cmd_list(list, out);
  } catch (const EnumerationTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kExitResourceCap;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CatalogMiss& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInstance& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hetbandit
