#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fredholm/errors.hpp"
#include "fredholm_cli/commands.hpp"
#include "fredholm_cli/config.hpp"

using namespace fredholm::cli;

int main(int argc, char** argv) {
  CLI::App app{"Particle solver for Fredholm integral equations of the second kind"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string out;
  std::string preset_name;
  std::string config_path;
  int threads = 1;
  auto* seed_opt = app.add_option("--seed", seed, "Run a single seed instead of the configured list")
                       ->envname("FREDHOLM_SEED");
  auto* out_opt = app.add_option("--out", out, "Output directory")->envname("FREDHOLM_OUT");
  auto* preset_opt = app.add_option("--preset", preset_name, "Start from a named experiment preset")
                         ->envname("FREDHOLM_PRESET")
                         ->check(CLI::IsMember(preset_names()));
  auto* config_opt = app.add_option("--config", config_path, "YAML experiment file (see docs/config.md)")
                         ->envname("FREDHOLM_CONFIG")
                         ->check(CLI::ExistingFile);
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads for the particle loops")
                          ->envname("FREDHOLM_THREADS")
                          ->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "Run the particle solver for every sweep point and seed");
  bool renormalize = false;
  solve->add_flag("--renormalize", renormalize, "Renormalize the reconstruction on the grid before metrics");
  app.add_subcommand("baseline", "Nystrom eigenvector or invariant-density baseline");
  auto* report = app.add_subcommand("report", "Aggregate summary CSVs and fit convergence rates");
  std::string report_dir;
  report->add_option("dir", report_dir, "Directory searched recursively for summary.csv files")->required();
  auto* plan = app.add_subcommand("plan-budget", "Balance N and the step size for a cost budget N^2/gamma");
  double budget = 0.0, c1 = 0.0, c2 = 0.0;
  plan->add_option("--budget", budget, "Cost budget B = N^2/gamma")->required();
  plan->add_option("--c1", c1, "Particle-error constant")->required();
  plan->add_option("--c2", c2, "Discretization-error constant")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (*plan) return cmd_plan_budget(budget, c1, c2, std::cout);
  if (*report) return cmd_report(report_dir, out_opt->count() ? out : report_dir + "/report", std::cerr);

  ExperimentConfig config;
  try {
    const std::optional<std::string> base = preset_opt->count() ? std::optional(preset_name) : std::nullopt;
    config = config_opt->count() ? load_config(config_path, base) : preset(base.value_or("custom"));
    if (seed_opt->count()) config.seeds = {seed};
    if (out_opt->count()) config.output_dir = out;
    if (threads_opt->count()) config.threads = threads;
    if (renormalize) config.output.renormalize = true;
    config.validate();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return *solve ? cmd_solve(config, std::cerr) : cmd_baseline(config, std::cerr);
}
