#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fredholm/grid.hpp"
#include "fredholm/sde.hpp"

namespace fredholm::cli {

/// Malformed, inconsistent or unreadable experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GpSpec {
  std::size_t training_points = 20;
  double length_scale_sq = 3.59 * 3.59;
  double signal_var = 4.21 * 4.21;
  /// Two-column (x, z) CSV; empty means generate from data_seed.
  std::filesystem::path training_data;
  /// Seed for generated training data; unset means the run seed.
  std::optional<std::uint64_t> data_seed;
  bool finite_difference_gradients = false;
};

struct ProblemSpec {
  /// gaussian-toy | exponential-kl | squared-exponential-kl | gp-ssm | constant-kernel
  std::string kind = "gaussian-toy";
  /// Equation coefficient for gaussian-toy; the eigen problems use 1/μ instead.
  double lambda = 0.5;
  double beta = 0.5;
  int dim = 1;
  /// Value of k for constant-kernel.
  double kernel_value = 1.0;
  GpSpec gp;
};

struct ReferenceSpec {
  /// Label used in output paths and summary rows; defaults to a description.
  std::string name;
  /// gaussian | flat | none
  std::string kind = "gaussian";
  double mean = 0.0;
  double var = 1.0;
  std::string label() const;
};

struct InitConfig {
  /// gaussian | uniform | samples
  std::string kind = "gaussian";
  double mean = 0.0;
  double sd = 0.1;
  double lo = -1.0;
  double hi = 1.0;
  std::filesystem::path path;
};

struct SimSpec {
  std::size_t particles = 100;
  /// Step size; unset means γ = 1/N.
  std::optional<double> step = 1e-2;
  std::size_t horizon = 200;
  /// When set, the horizon becomes round(duration / γ).
  std::optional<double> duration;
  InitConfig init;
  std::optional<StoppingRule> stopping;
  std::size_t snapshot_every = 10;

  double resolved_step() const;
  std::size_t resolved_horizon() const;
};

/// One sweep axis. Numeric axes: alpha, eta, lambda, beta, particles, step, horizon.
/// The reference axis takes a list of reference measures instead.
struct SweepAxis {
  std::string parameter;
  std::vector<double> values;
  std::vector<ReferenceSpec> references;
  std::size_t size() const { return parameter == "reference" ? references.size() : values.size(); }
};

struct BaselineSpec {
  double a = -1.0;
  double b = 1.0;
  std::size_t n = 500;
  /// auto | dense | power for eigen problems; resolve | project for invariant densities.
  std::string method = "auto";
};

struct OutputSpec {
  /// Write every snapshot to the cloud CSV (otherwise the final cloud only).
  bool all_snapshots = true;
  /// Renormalize π̂ on the grid before metrics (always on for the eigen problems).
  bool renormalize = false;
  /// Samples for the GP-SSM invariance check.
  std::size_t invariance_samples = 20000;
};

struct ExperimentConfig {
  std::string experiment = "custom";
  ProblemSpec problem;
  double alpha = 0.01;
  double eta = 0.0;
  ReferenceSpec reference;
  SimSpec sim;
  GridSpec grid;
  std::vector<std::uint64_t> seeds{1};
  std::vector<SweepAxis> sweep;
  BaselineSpec baseline;
  OutputSpec output;
  int threads = 1;
  std::filesystem::path output_dir = "fredholm-out";

  /// Throws ConfigError.
  void validate() const;
};

const std::vector<std::string>& preset_names();

/// Default configuration for a named experiment. Throws ConfigError for unknown names.
ExperimentConfig preset(std::string_view name);

/// Parses YAML text on top of a base: the `experiment` key (or `base_preset`) selects the preset
/// to start from, and every other key overrides it.
ExperimentConfig parse_config(std::string_view yaml, const std::optional<std::string>& base_preset = std::nullopt);
ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::optional<std::string>& base_preset = std::nullopt);

/// Full resolved configuration; parsing it back reproduces `config`.
std::string to_yaml(const ExperimentConfig& config);

}  // namespace fredholm::cli
