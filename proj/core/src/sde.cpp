#include "fredholm/sde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fredholm/drift.hpp"
#include "fredholm/errors.hpp"
#include "fredholm/io.hpp"
#include "fredholm/metrics.hpp"
#include "fredholm/parallel.hpp"
#include "fredholm/reconstruct.hpp"

namespace fredholm {

void SimConfig::validate() const {
  if (particles < 1) throw PreconditionError("need at least one particle");
  if (!(step > 0.0) || !std::isfinite(step)) throw PreconditionError("step size must be finite and > 0");
  if (!std::isfinite(step * static_cast<double>(horizon))) throw PreconditionError("step * horizon must be finite");
  if (snapshot_every < 1) throw PreconditionError("snapshot_every must be >= 1");
  if (stopping) {
    if (stopping->window < 2) throw PreconditionError("stopping window must be >= 2");
    if (!(stopping->rel_tol > 0.0)) throw PreconditionError("stopping rel_tol must be > 0");
  }
  if (const auto* g = std::get_if<GaussianInit>(&init)) {
    if (!(g->sd >= 0.0) || !std::isfinite(g->mean)) throw PreconditionError("gaussian init needs sd >= 0");
  } else if (const auto* u = std::get_if<UniformInit>(&init)) {
    if (!(u->hi > u->lo)) throw PreconditionError("uniform init needs hi > lo");
  }
  functional_grid.validate();
}

ParticleCloud init_cloud(const SimConfig& config, int dim) {
  config.validate();
  if (dim < 1) throw PreconditionError("dimension must be >= 1");
  const CounterRng rng(config.seed);
  const std::size_t n = config.particles;
  const auto d = static_cast<std::size_t>(dim);
  ParticleCloud cloud(n, dim);
  auto& x = cloud.positions();
  using D = CounterRng::Domain;

  if (const auto* g = std::get_if<GaussianInit>(&config.init)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < d; ++c)
        x[i * d + c] = g->mean + g->sd * rng.normal(D::kInit, 0, i, static_cast<std::uint32_t>(c));
  } else if (const auto* u = std::get_if<UniformInit>(&config.init)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < d; ++c)
        x[i * d + c] = u->lo + (u->hi - u->lo) * rng.uniform(D::kInit, 0, i, static_cast<std::uint32_t>(c));
  } else {
    const auto& path = std::get<SamplesInit>(config.init).path;
    const std::vector<double> rows = read_samples(path, dim);
    const std::size_t count = rows.size() / d;
    if (count == 0) throw IoError("no samples in " + path.string());
    for (std::size_t i = 0; i < n; ++i) {
      const double u = rng.uniform(D::kResample, 0, i, 0);
      const std::size_t pick = std::min(count - 1, static_cast<std::size_t>(u * static_cast<double>(count)));
      std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(pick * d), d, x.begin() + static_cast<std::ptrdiff_t>(i * d));
    }
  }
  return cloud;
}

ParticleCloud euler_step(const ParticleCloud& cloud, const FredholmProblem& problem, const Regularization& reg,
                         double step, const NoiseSource& noise, int threads) {
  if (!(step > 0.0)) throw PreconditionError("step size must be > 0");
  const DriftScratch scratch = pairwise_denominators(cloud, problem, reg.eta, threads);
  const std::vector<double> drift = drift_all(cloud, scratch, problem, reg, threads);

  const std::size_t n = cloud.size();
  const auto d = static_cast<std::size_t>(cloud.dim());
  const std::size_t next_step = cloud.step() + 1;
  const double scale = std::sqrt(2.0 * step * (reg.alpha + 1.0));

  ParticleCloud next = cloud;
  next.set_step(next_step);
  auto& x = next.positions();
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t c = 0; c < d; ++c) {
      x[i * d + c] += step * drift[i * d + c] + scale * noise.normal(next_step, i, static_cast<std::uint32_t>(c));
    }
  });
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k])) throw DivergenceError(k / d, k % d);
  }
  return next;
}

bool should_stop(const std::vector<double>& history, const StoppingRule& rule) {
  const std::size_t w = rule.window;
  if (w == 0 || history.size() < 2 * w) return false;
  const auto end = history.end();
  const double recent = std::accumulate(end - static_cast<std::ptrdiff_t>(w), end, 0.0) / static_cast<double>(w);
  const double before =
      std::accumulate(end - static_cast<std::ptrdiff_t>(2 * w), end - static_cast<std::ptrdiff_t>(w), 0.0) /
      static_cast<double>(w);
  const double scale = std::max(std::abs(before), std::numeric_limits<double>::min());
  return (before - recent) < rule.rel_tol * scale;
}

RunResult run_from(ParticleCloud initial, const FredholmProblem& problem, const Regularization& reg,
                   const SimConfig& config, const NoiseSource& noise, const RunOptions& options) {
  config.validate();
  problem.validate();
  reg.validate();
  if (initial.dim() != problem.dim) throw PreconditionError("cloud dimension does not match the problem");
  if (initial.size() == 0) throw PreconditionError("initial cloud is empty");

  const bool one_d = problem.dim == 1;
  const bool need_functional = one_d && (options.trace_functional || config.stopping.has_value());
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  RunResult result;
  std::vector<double> history;
  auto snapshot = [&](const ParticleCloud& cloud) {
    TraceRow row{cloud.step(), kNaN, kNaN};
    if (need_functional) {
      row.functional = estimate_functional(cloud, problem, reg, config.functional_grid).total;
      if (std::isfinite(row.functional)) history.push_back(row.functional);
    }
    if (one_d && options.reference_quantile) row.w1 = w1_to_quantiles(cloud.coordinate(0), options.reference_quantile);
    result.trace.push_back(row);
    if (options.on_snapshot) options.on_snapshot(cloud);
  };

  ParticleCloud cloud = std::move(initial);
  snapshot(cloud);
  bool last_recorded = true;
  for (std::size_t n = 0; n < config.horizon; ++n) {
    try {
      cloud = euler_step(cloud, problem, reg, config.step, noise, config.threads);
    } catch (SolverError& e) {
      e.set_step(cloud.step());
      throw;
    }
    last_recorded = (n + 1) % config.snapshot_every == 0;
    if (!last_recorded) continue;
    snapshot(cloud);
    if (config.stopping && should_stop(history, *config.stopping)) {
      result.stopped_early = n + 1 < config.horizon;
      break;
    }
  }
  if (!last_recorded) snapshot(cloud);
  result.final_cloud = std::move(cloud);
  return result;
}

RunResult run(const FredholmProblem& problem, const Regularization& reg, const SimConfig& config,
              const RunOptions& options) {
  const PhiloxNoise noise(config.seed);
  return run_from(init_cloud(config, problem.dim), problem, reg, config, noise, options);
}

BudgetPlan plan_budget(double budget, double c1, double c2) {
  if (!(budget > 0.0) || !(c1 > 0.0) || !(c2 > 0.0)) throw PreconditionError("budget, c1 and c2 must be > 0");
  BudgetPlan plan{budget, c1, c2, 1, 0.0};
  const double n = std::cbrt(budget) * std::pow(c1 / (2.0 * c2), 2.0 / 3.0);
  plan.n_opt = static_cast<std::size_t>(std::max(1.0, std::round(n)));
  const double nd = static_cast<double>(plan.n_opt);
  plan.gamma_opt = nd * nd / budget;
  return plan;
}

}  // namespace fredholm
