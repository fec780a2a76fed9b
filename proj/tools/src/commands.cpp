#include "fredholm_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "fredholm/baselines.hpp"
#include "fredholm/errors.hpp"
#include "fredholm/gp_model.hpp"
#include "fredholm/metrics.hpp"
#include "fredholm/reconstruct.hpp"

namespace fredholm::cli {
namespace {

namespace fs = std::filesystem;

bool is_eigen_kind(const std::string& kind) {
  return kind == "exponential-kl" || kind == "squared-exponential-kl" || kind == "constant-kernel";
}

std::string experiment_name(const RunPoint& point) {
  return point.tag.empty() ? point.config.experiment : point.config.experiment + "/" + point.tag;
}

NystromGrid baseline_grid(const ExperimentConfig& c) { return {c.baseline.a, c.baseline.b, c.baseline.n}; }

std::size_t to_count(double v, const std::string& what) {
  if (!(v >= 1.0) || v != std::floor(v)) throw ConfigError(what + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

void apply_axis(ExperimentConfig& c, const SweepAxis& axis, std::size_t i) {
  const std::string& p = axis.parameter;
  if (p == "reference") {
    c.reference = axis.references[i];
    return;
  }
  const double v = axis.values[i];
  if (p == "alpha") c.alpha = v;
  else if (p == "eta") c.eta = v;
  else if (p == "lambda") c.problem.lambda = v;
  else if (p == "beta") c.problem.beta = v;
  else if (p == "particles") c.sim.particles = to_count(v, "particles");
  else if (p == "step") c.sim.step = v;
  else if (p == "horizon") c.sim.horizon = to_count(v, "horizon");
  else throw ConfigError("unknown sweep parameter '" + p + "'");
}

std::string axis_label(const SweepAxis& axis, std::size_t i) {
  if (axis.parameter == "reference") return "reference=" + axis.references[i].label();
  return axis.parameter + "=" + format_double(axis.values[i]);
}

bool is_summary_column(const std::string& parameter) {
  return parameter == "alpha" || parameter == "particles" || parameter == "step";
}

// Maps library and config exceptions to exit codes.
template <class Body>
int guarded(std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PreconditionError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DivergenceError& e) {
    log << "diverged: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

SummaryRow row(const RunPoint& point, std::uint64_t seed, const std::string& metric, double value) {
  const auto& c = point.config;
  return {experiment_name(point), seed, c.sim.particles, c.sim.resolved_step(), c.alpha, metric, value};
}

void write_summary(const fs::path& path, const std::vector<SummaryRow>& rows) {
  fs::remove(path);
  append_summary(path, rows);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<RunPoint> expand_sweep(const ExperimentConfig& config) {
  std::vector<RunPoint> points{{"", "", config}};
  for (const auto& axis : config.sweep) {
    std::vector<RunPoint> next;
    for (const auto& base : points) {
      for (std::size_t i = 0; i < axis.size(); ++i) {
        RunPoint p = base;
        apply_axis(p.config, axis, i);
        const std::string part = axis_label(axis, i);
        p.label = p.label.empty() ? part : p.label + "/" + part;
        if (!is_summary_column(axis.parameter)) p.tag = p.tag.empty() ? part : p.tag + "/" + part;
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }
  for (auto& p : points) {
    p.config.sweep.clear();
    p.config.validate();
  }
  return points;
}

FredholmProblem build_problem(const ExperimentConfig& c, std::uint64_t seed) {
  const ProblemSpec& p = c.problem;
  if (p.kind == "gaussian-toy") return gaussian_toy_problem(p.lambda, p.beta, p.dim);
  if (p.kind == "exponential-kl") return exponential_kernel_problem().problem;
  if (p.kind == "squared-exponential-kl") {
    auto kernel = std::make_shared<SquaredExponentialKernel>();
    const double mu = nystrom_eig(*kernel, baseline_grid(c)).eigenvalue;
    return {kernel, std::make_shared<ZeroForcing>(), 1.0 / mu, 1};
  }
  if (p.kind == "constant-kernel") {
    const double lambda = 1.0 / (p.kernel_value * (c.baseline.b - c.baseline.a));
    return {std::make_shared<ConstantKernel>(p.kernel_value), std::make_shared<ZeroForcing>(), lambda, 1};
  }
  if (p.kind == "gp-ssm") {
    TrainingData data = p.gp.training_data.empty()
                            ? gp_ssm_training_data(p.gp.training_points, p.gp.data_seed.value_or(seed))
                            : read_training_data(p.gp.training_data);
    auto model = gp_fit(std::move(data.x), std::move(data.z), p.gp.length_scale_sq, p.gp.signal_var);
    return gp_ssm_problem(model, p.gp.finite_difference_gradients ? GradientMode::kFiniteDifference
                                                                  : GradientMode::kAnalytic);
  }
  throw ConfigError("unknown problem kind '" + p.kind + "'");
}

Regularization build_regularization(const ExperimentConfig& c) {
  Regularization reg;
  reg.alpha = c.alpha;
  reg.eta = c.eta;
  if (c.reference.kind == "gaussian") {
    reg.reference = std::make_shared<GaussianReference>(c.reference.mean, c.reference.var);
  } else if (c.reference.kind == "flat") {
    reg.reference = std::make_shared<FlatReference>();
  }
  reg.validate();
  return reg;
}

SimConfig build_sim_config(const ExperimentConfig& c, std::uint64_t seed) {
  SimConfig s;
  s.particles = c.sim.particles;
  s.step = c.sim.resolved_step();
  s.horizon = c.sim.resolved_horizon();
  s.seed = seed;
  const InitConfig& init = c.sim.init;
  if (init.kind == "gaussian") s.init = GaussianInit{init.mean, init.sd};
  else if (init.kind == "uniform") s.init = UniformInit{init.lo, init.hi};
  else s.init = SamplesInit{init.path};
  s.stopping = c.sim.stopping;
  s.snapshot_every = c.sim.snapshot_every;
  s.functional_grid = c.grid;
  s.threads = c.threads;
  s.validate();
  return s;
}

std::optional<GridDensity> analytic_density(const ExperimentConfig& c, const GridSpec& grid) {
  if (c.problem.kind == "gaussian-toy" && c.problem.dim == 1) {
    return tabulate(grid, [](double x) { return normal_pdf(x, 0.0, 1.0); });
  }
  if (c.problem.kind == "exponential-kl") return exponential_kernel_problem().reference_density(grid);
  return std::nullopt;
}

std::function<double(double)> analytic_quantile(const ExperimentConfig& c) {
  if (c.problem.kind == "gaussian-toy" && c.problem.dim == 1) return gaussian_quantile(0.0, 1.0);
  return {};
}

fs::path run_directory(const ExperimentConfig& config, const RunPoint& point, std::uint64_t seed) {
  fs::path dir = config.output_dir;
  if (!point.label.empty()) dir /= point.label;
  return dir / ("seed-" + std::to_string(seed));
}

SolveOutcome solve_one(const RunPoint& point, std::uint64_t seed) {
  const ExperimentConfig& c = point.config;
  const FredholmProblem problem = build_problem(c, seed);
  const Regularization reg = build_regularization(c);
  const SimConfig sim = build_sim_config(c, seed);

  SolveOutcome out;
  out.directory = run_directory(c, point, seed);
  fs::create_directories(out.directory);

  CloudWriter writer(out.directory / "cloud.csv", problem.dim);
  RunOptions options;
  options.trace_functional = problem.dim == 1;
  if (problem.dim == 1) options.reference_quantile = analytic_quantile(c);
  if (c.output.all_snapshots) options.on_snapshot = [&writer](const ParticleCloud& cloud) { writer.write(cloud); };

  out.result = run(problem, reg, sim, options);
  const ParticleCloud& final_cloud = out.result.final_cloud;
  if (!c.output.all_snapshots) writer.write(final_cloud);
  write_trace(out.directory / "trace.csv", out.result.trace);

  auto& rows = out.summary;
  const std::vector<double> xs = final_cloud.coordinate(0);
  const double mean = empirical_mean(xs);
  const double var = empirical_variance(xs);
  rows.push_back(row(point, seed, "mean", mean));
  rows.push_back(row(point, seed, "var", var));
  rows.push_back(row(point, seed, "steps", static_cast<double>(final_cloud.step())));
  rows.push_back(row(point, seed, "stopped_early", out.result.stopped_early ? 1.0 : 0.0));
  rows.push_back(row(point, seed, "lambda_alg", problem.lambda));
  if (c.problem.kind == "gaussian-toy") {
    rows.push_back(row(point, seed, "mean_sq_error", mean * mean));
    rows.push_back(row(point, seed, "var_sq_error", (var - 1.0) * (var - 1.0)));
  }

  if (problem.dim == 1) {
    out.density = plug_in_density(final_cloud, problem, c.grid, c.threads);
    rows.push_back(row(point, seed, "clamped_points", static_cast<double>(out.density.clamped)));
    if (c.output.renormalize || is_eigen_kind(c.problem.kind)) out.density = renormalized(std::move(out.density));
    write_grid_density(out.directory / "density.csv", out.density, "particle plug-in");

    if (const auto ref = analytic_density(c, c.grid)) rows.push_back(row(point, seed, "ise", ise(out.density, *ref)));
    if (const auto q = analytic_quantile(c)) rows.push_back(row(point, seed, "w1", w1_to_quantiles(xs, q)));
    if (!out.result.trace.empty() && std::isfinite(out.result.trace.back().functional)) {
      rows.push_back(row(point, seed, "functional", out.result.trace.back().functional));
    }
    if (const auto* gp = dynamic_cast<const GpPredictiveKernel*>(problem.kernel.get())) {
      const auto transition = [gp](double y, double xi) {
        const GpPredictive p = gp->predictive(y);
        return p.mean + std::sqrt(p.var) * xi;
      };
      rows.push_back(row(point, seed, "invariance_w1",
                         transition_invariance_w1(final_cloud, transition, c.output.invariance_samples, seed)));
    }
  }
  write_summary(out.directory / "summary.csv", rows);
  return out;
}

int cmd_solve(const ExperimentConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    config.validate();
    const std::vector<RunPoint> points = expand_sweep(config);
    fs::create_directories(config.output_dir);
    {
      std::ofstream echo(config.output_dir / "config.yaml");
      echo << to_yaml(config);
      if (!echo) throw IoError("cannot write " + (config.output_dir / "config.yaml").string());
    }
    for (const auto& point : points) {
      for (const std::uint64_t seed : config.seeds) {
        const SolveOutcome o = solve_one(point, seed);
        log << (point.label.empty() ? config.experiment : point.label) << " seed=" << seed
            << " steps=" << o.result.final_cloud.step();
        for (const auto& r : o.summary) {
          if (r.metric == "ise" || r.metric == "w1" || r.metric == "invariance_w1" || r.metric == "functional") {
            log << ' ' << r.metric << '=' << format_double(r.value);
          }
        }
        log << '\n';
      }
    }
    log << "wrote " << points.size() * config.seeds.size() << " run(s) under " << config.output_dir.string() << '\n';
    return int{kExitOk};
  });
}

int cmd_baseline(const ExperimentConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    config.validate();
    const NystromGrid grid = baseline_grid(config);
    const std::string& kind = config.problem.kind;
    const std::string experiment = config.experiment + "/nystrom";
    const auto summary_row = [&](std::uint64_t seed, const std::string& metric, double value) {
      return SummaryRow{experiment, seed, grid.n, 0.0, 0.0, metric, value};
    };

    if (is_eigen_kind(kind)) {
      EigenMethod method = EigenMethod::kAuto;
      if (config.baseline.method == "dense") method = EigenMethod::kDense;
      else if (config.baseline.method == "power") method = EigenMethod::kPower;
      else if (config.baseline.method != "auto") throw ConfigError("eigen baselines take method auto, dense or power");

      const FredholmProblem problem = build_problem(config, config.seeds.front());
      const EigenSolution sol = nystrom_eig(*problem.kernel, grid, method);
      const fs::path dir = config.output_dir / "baseline";
      write_grid_density(dir / "density.csv", sol.as_density(), "nystrom eigenvector");
      std::vector<SummaryRow> rows{summary_row(0, "eigenvalue", sol.eigenvalue),
                                   summary_row(0, "residual", sol.residual),
                                   summary_row(0, "lambda_alg", 1.0 / sol.eigenvalue)};
      if (kind == "exponential-kl") {
        const ExponentialEigenProblem exact = exponential_kernel_problem();
        rows.push_back(summary_row(0, "eigenvalue_error", std::abs(sol.eigenvalue - exact.eigenvalue)));
        rows.push_back(summary_row(0, "ise", ise(sol.as_density(), exact.reference_density(grid.as_grid()))));
      }
      write_summary(dir / "summary.csv", rows);
      log << "nystrom n=" << grid.n << " eigenvalue=" << format_double(sol.eigenvalue)
          << " residual=" << format_double(sol.residual) << '\n';
      return int{kExitOk};
    }

    if (config.problem.dim != 1) throw ConfigError("the invariant-density baseline is one-dimensional");
    InvariantMethod method = InvariantMethod::kResolve;
    if (config.baseline.method == "project") method = InvariantMethod::kProject;
    else if (config.baseline.method != "resolve" && config.baseline.method != "auto") {
      throw ConfigError("invariant baselines take method auto, resolve or project");
    }
    // Generated GP training data depends on the run seed, so each seed gets its own baseline.
    const bool per_seed = kind == "gp-ssm" && config.problem.gp.training_data.empty() && !config.problem.gp.data_seed;
    const std::vector<std::uint64_t> seeds =
        per_seed ? config.seeds : std::vector<std::uint64_t>{config.seeds.front()};
    for (const std::uint64_t seed : seeds) {
      const FredholmProblem problem = build_problem(config, seed);
      const GridDensity density = nystrom_invariant(*problem.kernel, grid, method, config.threads);
      const double residual = invariant_residual(nystrom_matrix(*problem.kernel, grid, config.threads), density.values);
      fs::path dir = config.output_dir / "baseline";
      if (per_seed) dir /= "seed-" + std::to_string(seed);
      write_grid_density(dir / "density.csv", density, "nystrom invariant density");
      std::vector<SummaryRow> rows{summary_row(seed, "invariant_residual", residual),
                                   summary_row(seed, "mass", density.integral())};
      if (const auto ref = analytic_density(config, density.grid)) {
        rows.push_back(summary_row(seed, "ise", ise(density, *ref)));
      }
      write_summary(dir / "summary.csv", rows);
      log << "nystrom invariant n=" << grid.n << " seed=" << seed << " residual=" << format_double(residual) << '\n';
    }
    return int{kExitOk};
  });
}

int cmd_report(const fs::path& dir, const fs::path& out, std::ostream& log) {
  return guarded(log, [&]() -> int {
    if (!fs::is_directory(dir)) {
      log << "report: " << dir.string() << " is not a directory\n";
      return kExitFailure;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().filename() == "summary.csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    using Key = std::tuple<std::string, std::size_t, double, double, std::string>;
    std::map<Key, std::vector<double>> groups;
    std::size_t rows_read = 0;
    for (const auto& f : files) {
      try {
        for (const auto& r : read_summary(f)) {
          ++rows_read;
          if (std::isfinite(r.value)) groups[{r.experiment, r.particles, r.gamma, r.alpha, r.metric}].push_back(r.value);
        }
      } catch (const IoError& e) {
        log << "report: skipping " << f.string() << ": " << e.what() << '\n';
      }
    }
    if (groups.empty()) {
      log << "report: no summary rows found under " << dir.string() << '\n';
      return kExitFailure;
    }

    fs::create_directories(out);
    std::ofstream agg(out / "aggregate.csv");
    agg << "experiment,N,gamma,alpha,metric_name,count,mean,sd,rms\n";
    for (const auto& [key, values] : groups) {
      const auto& [experiment, n, gamma, alpha, metric] = key;
      const double m = mean_of(values);
      double ss = 0.0, sq = 0.0;
      for (double v : values) {
        ss += (v - m) * (v - m);
        sq += v * v;
      }
      const double sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
      agg << experiment << ',' << n << ',' << format_double(gamma) << ',' << format_double(alpha) << ',' << metric
          << ',' << values.size() << ',' << format_double(m) << ',' << format_double(sd) << ','
          << format_double(std::sqrt(sq / static_cast<double>(values.size()))) << '\n';
    }

    // Rate fits: error against N at fixed (gamma, alpha) and against gamma at fixed (N, alpha).
    // Squared-error metrics are fitted on their root mean.
    const std::set<std::string> fitted = {"mean_sq_error", "var_sq_error", "w1", "ise"};
    using Curve = std::vector<std::pair<double, double>>;
    std::map<std::tuple<std::string, std::string, std::string, double, double>, Curve> curves;
    for (const auto& [key, values] : groups) {
      const auto& [experiment, n, gamma, alpha, metric] = key;
      if (!fitted.count(metric)) continue;
      const bool squared = metric.ends_with("_sq_error");
      const double err = squared ? std::sqrt(mean_of(values)) : mean_of(values);
      const std::string name = squared ? "rmse_" + metric.substr(0, metric.size() - 9) : metric;
      curves[{experiment, name, "N", gamma, alpha}].emplace_back(static_cast<double>(n), err);
      curves[{experiment, name, "gamma", static_cast<double>(n), alpha}].emplace_back(gamma, err);
    }
    std::ofstream pts(out / "curves.csv");
    pts << "experiment,metric_name,axis,scale,error\n";
    std::ofstream rates(out / "rates.csv");
    rates << "experiment,metric_name,axis,held_fixed,alpha,slope,intercept,r2,points\n";
    std::size_t fits = 0;
    for (const auto& [key, curve] : curves) {
      const auto& [experiment, metric, axis, fixed, alpha] = key;
      if (curve.size() < 2) continue;
      for (const auto& [s, e] : curve) {
        pts << experiment << ',' << metric << ',' << axis << ',' << format_double(s) << ',' << format_double(e) << '\n';
      }
      if (curve.size() < 3) continue;
      try {
        const RateFit fit = fit_rate(curve);
        rates << experiment << ',' << metric << ',' << axis << ',' << format_double(fixed) << ','
              << format_double(alpha) << ',' << format_double(fit.slope) << ',' << format_double(fit.intercept) << ','
              << format_double(fit.r2) << ',' << curve.size() << '\n';
        log << experiment << ' ' << metric << " vs " << axis << ": slope " << format_double(fit.slope)
            << " (r2 " << format_double(fit.r2) << ")\n";
        ++fits;
      } catch (const PreconditionError& e) {
        log << "report: no fit for " << experiment << ' ' << metric << " vs " << axis << ": " << e.what() << '\n';
      }
    }
    log << "report: " << rows_read << " rows from " << files.size() << " file(s), " << groups.size()
        << " groups, " << fits << " rate fit(s) -> " << out.string() << '\n';
    return kExitOk;
  });
}

int cmd_plan_budget(double budget, double c1, double c2, std::ostream& out) {
  return guarded(out, [&] {
    const BudgetPlan plan = plan_budget(budget, c1, c2);
    out << "budget,c1,c2,n_opt,gamma_opt\n"
        << format_double(plan.budget) << ',' << format_double(plan.c1) << ',' << format_double(plan.c2) << ','
        << plan.n_opt << ',' << format_double(plan.gamma_opt) << '\n';
    return int{kExitOk};
  });
}

}  // namespace fredholm::cli
