#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fredholm/grid.hpp"
#include "fredholm/io.hpp"
#include "fredholm/problems.hpp"
#include "fredholm/sde.hpp"
#include "fredholm_cli/config.hpp"

namespace fredholm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitDivergence = 3,
};

/// One point of the sweep grid with every axis applied to the configuration.
struct RunPoint {
  /// "lambda=0.3/reference=target"; empty when there is no sweep.
  std::string label;
  /// Same, restricted to axes that are not summary columns (N, gamma, alpha).
  std::string tag;
  ExperimentConfig config;
};

std::vector<RunPoint> expand_sweep(const ExperimentConfig& config);

FredholmProblem build_problem(const ExperimentConfig& config, std::uint64_t seed);
Regularization build_regularization(const ExperimentConfig& config);
SimConfig build_sim_config(const ExperimentConfig& config, std::uint64_t seed);

/// Known solution tabulated on `grid`, when the problem has one.
std::optional<GridDensity> analytic_density(const ExperimentConfig& config, const GridSpec& grid);
std::function<double(double)> analytic_quantile(const ExperimentConfig& config);

/// Output directory of one (point, seed) run.
std::filesystem::path run_directory(const ExperimentConfig& config, const RunPoint& point, std::uint64_t seed);

struct SolveOutcome {
  RunResult result;
  /// π̂ on the configured grid (renormalized when the problem asks for it).
  GridDensity density;
  std::vector<SummaryRow> summary;
  std::filesystem::path directory;
};

/// Runs one (point, seed) simulation and writes cloud.csv, density.csv, trace.csv, summary.csv.
SolveOutcome solve_one(const RunPoint& point, std::uint64_t seed);

/// Each command returns a process exit code and reports progress on `log`.
int cmd_solve(const ExperimentConfig& config, std::ostream& log);
int cmd_baseline(const ExperimentConfig& config, std::ostream& log);
int cmd_report(const std::filesystem::path& dir, const std::filesystem::path& out, std::ostream& log);
int cmd_plan_budget(double budget, double c1, double c2, std::ostream& out);

}  // namespace fredholm::cli
