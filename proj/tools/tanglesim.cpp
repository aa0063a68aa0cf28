#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "tanglesim/analysis.hpp"
#include "tanglesim/config.hpp"
#include "tanglesim/engine.hpp"
#include "tanglesim/output.hpp"

namespace fs = std::filesystem;
using namespace tanglesim;

namespace {

constexpr int kConfigExit = 2;

struct RunArgs {
  std::string preset_name;
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs;
  std::optional<double> duration;
  std::string out_dir = "out";
  bool quiet = false;
  bool verbose = false;
};

ScenarioConfig load_scenario(const RunArgs& args) {
  ScenarioConfig config;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw ConfigError("config", "cannot read " + args.config_path);
    std::stringstream text;
    text << in.rdbuf();
    config = config_from_json(text.str());
  } else {
    config = preset(args.preset_name.empty() ? "honest_baseline" : args.preset_name);
  }
  for (const auto& o : args.overrides) apply_override(config, o);
  if (args.seed) config.seed = *args.seed;
  if (args.runs) config.runs = *args.runs;
  if (args.duration) config.duration_s = *args.duration;
  config.validate();
  return config;
}

void print_summary(const RunSummary& s) {
  std::printf("run %03zu seed %llu: tips(last quarter) %s, mean latency %s s, honest scaled-CR spread %s\n",
              s.run_index, static_cast<unsigned long long>(s.seed),
              format_number(s.mean_tips_last_quarter).c_str(), format_number(s.mean_latency).c_str(),
              format_number(s.fairness_gap).c_str());
  std::fflush(stdout);
}

int do_run(const RunArgs& args) {
  ScenarioConfig config;
  try {
    config = load_scenario(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  }

  const fs::path out = args.out_dir;
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    std::cerr << "config error: out: cannot create " << out.string() << '\n';
    return kConfigExit;
  }

  std::vector<RunSummary> summaries;
  for (std::size_t i = 0; i < config.runs; ++i) {
    RunSummary summary;
    try {
      const RunResult result = run(config, i);
      write_run(result, out / run_dir_name(i));
      summary = summarize(result);
    } catch (const OutputError& e) {
      std::cerr << "output error: " << e.what() << '\n';
      return kConfigExit;
    } catch (const std::exception& e) {
      std::cerr << "run " << i << " failed: " << e.what() << '\n';
      return 1;
    }
    if (!args.quiet) print_summary(summary);
    summaries.push_back(summary);
  }
  try {
    write_aggregate(summaries, out / "aggregate.csv");
  } catch (const OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kConfigExit;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event simulator for a DAG ledger with access control"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  RunArgs args;
  if (const char* env = std::getenv("TANGLESIM_OUT"); env != nullptr && *env != '\0') {
    args.out_dir = env;
  }

  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write per-run CSVs");
  auto* preset_opt = run_cmd->add_option("--preset", args.preset_name, "Shipped preset name");
  run_cmd->add_option("--config", args.config_path, "Scenario JSON file (run_meta.json works too)")
      ->excludes(preset_opt);
  run_cmd->add_option("--set", args.overrides, "Override a config key, e.g. --set aimd.beta=0.5")
      ->allow_extra_args(false);
  run_cmd->add_option("--seed", args.seed, "Root seed; run i uses seed+i");
  run_cmd->add_option("--runs", args.runs, "Monte Carlo replications");
  run_cmd->add_option("--duration", args.duration, "Simulated seconds per run");
  run_cmd->add_option("--out", args.out_dir, "Output directory (default $TANGLESIM_OUT or ./out)");
  auto* quiet = run_cmd->add_flag("-q,--quiet", args.quiet, "No per-run summary lines");
  run_cmd->add_flag("-v,--verbose", args.verbose, "Debug logging")->excludes(quiet);

  std::string show_name;
  auto* preset_cmd = app.add_subcommand("preset", "Print a preset as JSON");
  preset_cmd->add_option("name", show_name, "Preset name")->required();

  auto* list_cmd = app.add_subcommand("presets", "List preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  spdlog::set_level(args.verbose ? spdlog::level::debug
                                 : (args.quiet ? spdlog::level::err : spdlog::level::warn));

  if (run_cmd->parsed()) return do_run(args);
  if (preset_cmd->parsed()) {
    try {
      std::cout << to_json(preset(show_name)) << '\n';
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return kConfigExit;
    }
    return 0;
  }
  if (list_cmd->parsed()) {
    for (const auto& name : preset_names()) std::cout << name << '\n';
  }
  return 0;
}
