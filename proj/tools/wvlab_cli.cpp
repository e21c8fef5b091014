// wvlab: weak-value sweeps, dual-oracle comparisons, and Fisher-information
// reports from the command line. Emits CSV or JSON records; identical
// config + seed reproduces output byte for byte.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include <json.hpp>
#endif

#include "wvlab/wvlab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;   // unknown scenario, invalid grid, bad flags
constexpr int kExitNumeric = 3;  // module-level numerical failure

struct CliFlags {
  std::string config_file;
  std::string scenario;
  double theta_min = 0.0;
  double theta_max = 0.0;
  int steps = 0;
  bool log_spacing = false;
  long long trials = -1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double chi = 0.0;
  std::string path;
  double sigma = 0.0;
  std::string output;
  std::string format;
};

void apply_config_file(wvlab::RunConfig& config, const std::string& file) {
  std::ifstream in(file);
  if (!in) throw wvlab::InvalidArgument("cannot open config file: " + file);
  nlohmann::json j;
  in >> j;
  if (j.contains("scenario")) config.scenario = j["scenario"].get<std::string>();
  if (j.contains("theta")) {
    const auto& t = j["theta"];
    if (t.contains("min")) config.grid.min = t["min"].get<double>();
    if (t.contains("max")) config.grid.max = t["max"].get<double>();
    if (t.contains("steps")) config.grid.steps = t["steps"].get<int>();
    if (t.contains("spacing")) config.grid.log_spacing = t["spacing"].get<std::string>() == "log";
  }
  if (j.contains("trials")) config.trials = j["trials"].get<long long>();
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("chi")) config.chi = j["chi"].get<double>();
  if (j.contains("path")) config.path = j["path"].get<std::string>();
  if (j.contains("sigma")) config.sigma = j["sigma"].get<double>();
  if (j.contains("output")) config.output = j["output"].get<std::string>();
  if (j.contains("format")) {
    std::string f = j["format"].get<std::string>();
    if (f != "csv" && f != "json") throw wvlab::InvalidArgument("format must be csv or json");
    config.format = f == "json" ? wvlab::OutputFormat::json : wvlab::OutputFormat::csv;
  }
}

// Config file first, then flags override whatever was given explicitly.
wvlab::RunConfig build_config(const CliFlags& flags, const CLI::App& cmd) {
  wvlab::RunConfig config;
  if (!flags.config_file.empty()) apply_config_file(config, flags.config_file);
  if (cmd.count("--scenario")) config.scenario = flags.scenario;
  if (cmd.count("--theta-min")) config.grid.min = flags.theta_min;
  if (cmd.count("--theta-max")) config.grid.max = flags.theta_max;
  if (cmd.count("--steps")) config.grid.steps = flags.steps;
  if (cmd.count("--log-spacing")) config.grid.log_spacing = flags.log_spacing;
  if (cmd.count("--trials")) config.trials = flags.trials;
  if (cmd.count("--seed")) config.seed = flags.seed;
  if (cmd.count("--chi")) config.chi = flags.chi;
  if (cmd.count("--path")) config.path = flags.path;
  if (cmd.count("--sigma")) config.sigma = flags.sigma;
  if (cmd.count("--output")) config.output = flags.output;
  if (cmd.count("--format")) {
    if (flags.format != "csv" && flags.format != "json")
      throw wvlab::InvalidArgument("format must be csv or json");
    config.format = flags.format == "json" ? wvlab::OutputFormat::json : wvlab::OutputFormat::csv;
  }
  if (config.sigma == 0.0) config.sigma = 1.0;
  if (config.trials < 0) config.trials = 0;
  return config;
}

void add_common_flags(CLI::App* cmd, CliFlags& flags) {
  cmd->add_option("--config", flags.config_file, "JSON config file; flags override it");
  cmd->add_option("--scenario", flags.scenario, "scenario preset (see list-scenarios)");
  cmd->add_option("--theta-min", flags.theta_min, "sweep start");
  cmd->add_option("--theta-max", flags.theta_max, "sweep end");
  cmd->add_option("--steps", flags.steps, "number of sweep points");
  cmd->add_flag("--log-spacing", flags.log_spacing, "logarithmic theta spacing");
  cmd->add_option("--trials", flags.trials, "Monte-Carlo trials per point (0 = exact)");
  cmd->add_option("--seed", flags.seed, "base RNG seed");
  cmd->add_option("--chi", flags.chi, "spin Bloch angle");
  cmd->add_option("--path", flags.path, "three-box path A|B|C, or pre|post for spin");
  cmd->add_option("--sigma", flags.sigma, "Gaussian-probe pointer width");
  cmd->add_option("--output", flags.output, "output file (default stdout)");
  cmd->add_option("--format", flags.format, "csv or json");
}

int emit(const wvlab::RunConfig& config, const std::string& body) {
  if (config.output.empty()) {
    std::cout << body;
    return kExitOk;
  }
  std::ofstream out(config.output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << config.output << "\n";
    return kExitConfig;
  }
  out << body;
  return kExitOk;
}

bool known_scenario(const std::string& name) {
  for (const auto& [key, desc] : wvlab::scenario_catalog())
    if (key == name) return true;
  return false;
}

int run_command(const wvlab::RunConfig& config) {
  if (!known_scenario(config.scenario)) {
    std::cerr << "error: unknown scenario: " << config.scenario << "\n";
    return kExitConfig;
  }
  if (wvlab::SmallTransform::exceeds_envelope(config.grid.min) ||
      wvlab::SmallTransform::exceeds_envelope(config.grid.max)) {
    std::cerr << "warning: sweep leaves the small-transform envelope |theta| <= 1; "
                 "slope columns lose their first-order meaning there\n";
  }
  wvlab::SweepResult result = wvlab::run_sweep(config);
  std::ostringstream body;
  if (config.format == wvlab::OutputFormat::csv)
    wvlab::write_csv(body, config, result);
  else
    wvlab::write_json(body, config, result);
  return emit(config, body.str());
}

int compare_oracles_command(wvlab::RunConfig config) {
  if (config.scenario.empty()) config.scenario = "three-box-weak";
  if (config.grid.min == 0.0 && !config.grid.log_spacing) {
    // Slope columns need theta != 0; default to a log sweep.
    config.grid.min = 1e-3;
    config.grid.max = 1e-1;
    config.grid.steps = config.grid.steps > 1 ? config.grid.steps : 9;
    config.grid.log_spacing = true;
  }
  auto records = wvlab::compare_oracles(config);
  std::ostringstream body;
  if (config.format == wvlab::OutputFormat::csv)
    wvlab::write_csv(body, config, records);
  else
    wvlab::write_json(body, config, records);
  return emit(config, body.str());
}

int fisher_command(wvlab::RunConfig config) {
  if (config.scenario.empty()) config.scenario = "three-box-weak";
  auto records = wvlab::fisher_sweep(config);
  std::ostringstream body;
  if (config.format == wvlab::OutputFormat::csv)
    wvlab::write_csv(body, config, records);
  else
    wvlab::write_json(body, config, records);
  return emit(config, body.str());
}

int list_scenarios_command() {
  for (const auto& [name, desc] : wvlab::scenario_catalog())
    std::cout << name << "  -  " << desc << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak-value numerical laboratory"};
  app.require_subcommand(1);

  CliFlags run_flags, oracle_flags, fisher_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "sweep a scenario over theta");
  add_common_flags(run_cmd, run_flags);
  CLI::App* oracle_cmd = app.add_subcommand(
      "compare-oracles", "probe-free vs Gaussian-probe weak-value estimates");
  add_common_flags(oracle_cmd, oracle_flags);
  CLI::App* fisher_cmd =
      app.add_subcommand("fisher", "Fisher information and Cramer-Rao bounds over theta");
  add_common_flags(fisher_cmd, fisher_flags);
  CLI::App* list_cmd = app.add_subcommand("list-scenarios", "print scenario presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) return list_scenarios_command();
    if (run_cmd->parsed()) {
      wvlab::RunConfig config;
      try {
        config = build_config(run_flags, *run_cmd);
        config.grid.points();  // validate the grid up front
      } catch (const wvlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
      }
      return run_command(config);
    }
    if (oracle_cmd->parsed()) {
      wvlab::RunConfig config;
      try {
        config = build_config(oracle_flags, *oracle_cmd);
      } catch (const wvlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
      }
      return compare_oracles_command(config);
    }
    if (fisher_cmd->parsed()) {
      wvlab::RunConfig config;
      try {
        config = build_config(fisher_flags, *fisher_cmd);
        config.grid.points();
      } catch (const wvlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
      }
      return fisher_command(config);
    }
  } catch (const wvlab::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const wvlab::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
