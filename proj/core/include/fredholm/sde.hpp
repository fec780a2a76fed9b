#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "fredholm/cloud.hpp"
#include "fredholm/grid.hpp"
#include "fredholm/noise.hpp"
#include "fredholm/problems.hpp"

namespace fredholm {

struct GaussianInit {
  double mean = 0.0;
  double sd = 1.0;
};

struct UniformInit {
  double lo = -1.0;
  double hi = 1.0;
};

/// i.i.d. resampling (with replacement) of the rows of a CSV file.
struct SamplesInit {
  std::filesystem::path path;
};

using InitSpec = std::variant<GaussianInit, UniformInit, SamplesInit>;

/// Stop once the mean functional estimate over the latest `window` evaluations
/// improves on the preceding `window` evaluations by less than rel_tol (relative).
struct StoppingRule {
  std::size_t window = 5;
  double rel_tol = 1e-3;
};

struct SimConfig {
  std::size_t particles = 100;
  double step = 1e-2;
  std::size_t horizon = 200;
  std::uint64_t seed = 0;
  InitSpec init = GaussianInit{0.0, 0.1};
  std::optional<StoppingRule> stopping;
  std::size_t snapshot_every = 10;
  /// Grid for the functional estimate (one-dimensional problems only).
  GridSpec functional_grid{};
  /// Workers for the O(N²) loops; results do not depend on it.
  int threads = 1;

  void validate() const;
};

ParticleCloud init_cloud(const SimConfig& config, int dim);

/// X ← X + γ b(X, π^N) + sqrt(2γ(α + 1)) Z. Z for the new step n+1 is taken from
/// `noise` as normal(n+1, particle, coordinate).
ParticleCloud euler_step(const ParticleCloud& cloud, const FredholmProblem& problem, const Regularization& reg,
                         double step, const NoiseSource& noise, int threads = 1);

struct TraceRow {
  std::size_t step = 0;
  double functional = 0.0;  // NaN when not evaluated
  double w1 = 0.0;          // NaN when no reference quantile is given
};

struct RunOptions {
  /// Evaluate the functional estimate at every snapshot (d = 1 only).
  bool trace_functional = true;
  /// Reference quantile function for W1 tracking (d = 1 only).
  std::function<double(double)> reference_quantile;
  /// Called with every snapshot, including step 0 and the final cloud.
  std::function<void(const ParticleCloud&)> on_snapshot;
};

struct RunResult {
  ParticleCloud final_cloud;
  std::vector<TraceRow> trace;
  bool stopped_early = false;
};

RunResult run(const FredholmProblem& problem, const Regularization& reg, const SimConfig& config,
              const RunOptions& options = {});

/// Same loop from an explicit initial cloud and noise source.
RunResult run_from(ParticleCloud initial, const FredholmProblem& problem, const Regularization& reg,
                   const SimConfig& config, const NoiseSource& noise, const RunOptions& options = {});

/// Windowed decrease test used by the adaptive stopping rule.
bool should_stop(const std::vector<double>& history, const StoppingRule& rule);

struct BudgetPlan {
  double budget = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::size_t n_opt = 1;
  double gamma_opt = 0.0;
};

/// Minimizes c1/√N + c2√γ subject to N²/γ = B.
BudgetPlan plan_budget(double budget, double c1, double c2);

}  // namespace fredholm
