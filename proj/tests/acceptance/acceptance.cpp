// Acceptance suite: one PASS/FAIL line per criterion, exit status = number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fredholm/baselines.hpp"
#include "fredholm/drift.hpp"
#include "fredholm/gp_model.hpp"
#include "fredholm/metrics.hpp"
#include "fredholm/reconstruct.hpp"
#include "fredholm/sde.hpp"
#include "fredholm_cli/commands.hpp"
#include "fredholm_cli/config.hpp"

namespace fs = std::filesystem;
using namespace fredholm;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(const char* id, const char* name, bool pass, const std::string& detail, double secs) {
  std::printf("%s  %-4s %-34s %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, name, detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void info(const std::string& line) {
  std::printf("      %s\n", line.c_str());
  std::fflush(stdout);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

ParticleCloud random_cloud(std::size_t n, int d, std::mt19937_64& rng, double sd = 1.5) {
  std::normal_distribution<double> g(0.0, sd);
  ParticleCloud c(n, d);
  for (double& v : c.positions()) v = g(rng);
  return c;
}

// Direct O(N³) transcription of the drift: denominators recomputed inside the double loop.
std::vector<double> naive_drift(const ParticleCloud& c, const FredholmProblem& p, const Regularization& reg) {
  const std::size_t n = c.size();
  const auto d = static_cast<std::size_t>(c.dim());
  const auto denom = [&](ConstPoint x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += p.kernel->eval(x, c.point(i));
    return p.lambda * s / static_cast<double>(n) + p.forcing->eval(x) + reg.eta;
  };
  std::vector<double> out(n * d, 0.0), g1(d), g2(d), gphi(d), gu(d, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    const auto x = c.point(l);
    std::vector<double> acc(d, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      const auto z = c.point(m);
      p.kernel->grad2(z, x, g2);
      p.kernel->grad1(x, z, g1);
      p.forcing->grad(x, gphi);
      const double dz = denom(z), dx = denom(x);
      for (std::size_t k = 0; k < d; ++k) acc[k] += p.lambda * g2[k] / dz + (p.lambda * g1[k] + gphi[k]) / dx;
    }
    if (reg.alpha != 0.0) reg.reference->grad_potential(x, gu);
    for (std::size_t k = 0; k < d; ++k) out[l * d + k] = acc[k] / static_cast<double>(n) - reg.alpha * gu[k];
  }
  return out;
}

// ---------------------------------------------------------------------------

void criterion_1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  const auto ref = std::make_shared<GaussianReference>(0.0, 1.0);
  double worst = 0.0;
  std::size_t clouds = 0;
  for (int which = 0; which < 2; ++which) {
    for (std::size_t n : {1u, 2u, 3u, 5u, 17u}) {
      for (int rep = 0; rep < 20; ++rep) {
        const int d = 1 + rep % 2;
        FredholmProblem p = gaussian_toy_problem(0.5, 0.5, d);
        if (which == 1) {
          p.kernel = std::make_shared<ExponentialKernel>();
          p.forcing = std::make_shared<GaussianForcing>(0.3, 0.2, 1.5);
          p.lambda = 0.7;
        }
        const Regularization reg{0.1, rep % 3 == 0 ? 0.01 : 0.0, ref};
        const ParticleCloud c = random_cloud(n, d, rng);
        const auto fast = drift_all(c, pairwise_denominators(c, p, reg.eta), p, reg);
        const auto slow = naive_drift(c, p, reg);
        for (std::size_t i = 0; i < fast.size(); ++i) worst = std::max(worst, std::abs(fast[i] - slow[i]));
        ++clouds;
      }
    }
  }
  const double secs = seconds_since(t0);
  report("C1", "drift oracle equivalence", worst <= 1e-12 && secs < 1.0,
         fmt("max|diff| = %.2e over %zu clouds (tol 1e-12, < 1 s)", worst, clouds), secs);
}

void criterion_2() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.5);
  double worst = 0.0;
  std::size_t checks = 0;
  std::string worst_where;

  const auto compare = [&](double analytic, double fd, const char* what) {
    const double scale = std::max(std::abs(analytic), std::abs(fd));
    const double rel = std::abs(analytic - fd) / std::max(scale, 1e-8);
    if (scale > 1e-10 && rel > worst) {
      worst = rel;
      worst_where = what;
    }
    ++checks;
  };
  const auto fd1 = [](const std::function<double(double)>& f, double x) {
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };

  const auto data = gp_ssm_training_data(20, 1);
  const auto gp_model = gp_fit(data.x, data.z, 3.59 * 3.59, 4.21 * 4.21);
  struct Named {
    const char* name;
    std::shared_ptr<const Kernel> kernel;
  };
  const std::vector<Named> kernels = {{"toy kernel", std::make_shared<GaussianToyKernel>(0.5)},
                                      {"exponential kernel", std::make_shared<ExponentialKernel>()},
                                      {"squared-exponential kernel", std::make_shared<SquaredExponentialKernel>()},
                                      {"gp predictive kernel", std::make_shared<GpPredictiveKernel>(gp_model)}};
  const GaussianForcing forcing(0.5, 0.0, 1.0);
  const GaussianReference reference(0.3, 2.0);
  const FredholmProblem toy = gaussian_toy_problem(0.5, 0.5);

  for (int i = 0; i < 100; ++i) {
    double x = g(rng), y = g(rng);
    if (std::abs(x - y) < 1e-3) y += 0.1;
    for (const auto& [name, k] : kernels) {
      double a[1];
      const double yy[1] = {y}, xx[1] = {x};
      k->grad1(xx, yy, a);
      compare(a[0], fd1([&](double t) { const double p[1] = {t}; return k->eval(p, yy); }, x), name);
      k->grad2(xx, yy, a);
      compare(a[0], fd1([&](double t) { const double p[1] = {t}; return k->eval(xx, p); }, y), name);
    }
    double a[1];
    const double xx[1] = {x};
    forcing.grad(xx, a);
    compare(a[0], fd1([&](double t) { const double p[1] = {t}; return forcing.eval(p); }, x), "forcing");
    reference.grad_potential(xx, a);
    compare(a[0], fd1([&](double t) { const double p[1] = {t}; return -std::log(reference.density(p)); }, x),
            "reference potential");

    // b^η terms; an infinite denominator switches the other term off.
    const double zz[1] = {y};
    const double dx = 0.3 + std::abs(g(rng)), dz = 0.3 + std::abs(g(rng));
    const double inf = std::numeric_limits<double>::infinity();
    b_eta(xx, zz, inf, dz, toy, a);
    compare(a[0], fd1([&](double t) { const double p[1] = {t}; return toy.lambda * toy.kernel->eval(zz, p) / dz; }, x),
            "b_eta first term");
    b_eta(xx, zz, dx, inf, toy, a);
    compare(a[0],
            fd1([&](double t) {
              const double p[1] = {t};
              return (toy.lambda * toy.kernel->eval(p, zz) + toy.forcing->eval(p)) / dx;
            }, x),
            "b_eta second term");
  }
  const double secs = seconds_since(t0);
  report("C2", "gradient soundness", worst <= 1e-4 && secs < 5.0,
         fmt("max rel err = %.2e (%s) over %zu checks at 100 points (tol 1e-4)", worst, worst_where.c_str(), checks),
         secs);
}

void criterion_3() {
  const auto t0 = Clock::now();
  const FredholmProblem problem = gaussian_toy_problem(0.5, 0.5);
  const Regularization reg{0.1, 0.0, std::make_shared<GaussianReference>(0.0, 1.0)};
  struct Init {
    const char* name;
    InitSpec spec;
  };
  const std::vector<Init> inits = {{"diffuse N(0,4)", GaussianInit{0.0, 2.0}},
                                   {"concentrated N(0,0.01)", GaussianInit{0.0, 0.1}},
                                   {"target N(0,1)", GaussianInit{0.0, 1.0}},
                                   {"uniform[-1,1]", UniformInit{-1.0, 1.0}}};
  RunOptions options;
  options.trace_functional = false;
  options.reference_quantile = gaussian_quantile(0.0, 1.0);

  bool pass = true;
  std::vector<std::string> lines;
  std::vector<double> target_means, target_vars;
  for (const auto& init : inits) {
    std::vector<double> w_early, w_final;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SimConfig sim;
      sim.particles = 500;
      sim.step = 1e-3;
      sim.horizon = 1000;
      sim.seed = seed;
      sim.init = init.spec;
      sim.snapshot_every = 50;
      const RunResult r = run(problem, reg, sim, options);
      for (const auto& row : r.trace) {
        if (row.step == 50) w_early.push_back(row.w1);
        if (row.step == 1000) w_final.push_back(row.w1);
      }
      if (std::string(init.name).starts_with("target")) {
        const auto xs = r.final_cloud.coordinate(0);
        target_means.push_back(empirical_mean(xs));
        target_vars.push_back(empirical_variance(xs));
      }
    }
    const double early = mean_of(w_early), final = mean_of(w_final);
    const bool ok = final < 0.15 && final < early;
    pass = pass && ok;
    lines.push_back(fmt("%-24s W1(n=50) = %.4f  W1(n=1000) = %.4f  %s", init.name, early, final, ok ? "ok" : "fails"));
  }
  report("C3", "toy convergence from 4 inits", pass, "mean over 5 seeds: W1(1000) < 0.15 and W1(1000) < W1(50)",
         seconds_since(t0));
  for (const auto& l : lines) info(l);

  const double m = mean_of(target_means), v = mean_of(target_vars);
  report("S3", "toy long run from the target", std::abs(m) < 0.1 && std::abs(v - 1.0) < 0.15,
         fmt("mean over 5 seeds: mean = %.4f (|.| < 0.1), var = %.4f (|var-1| < 0.15)", m, v), 0.0);
}

// Root mean of squared final cloud means, averaged over seeds, for one resolved configuration.
double rmse_mean(const cli::ExperimentConfig& c, const std::vector<std::uint64_t>& seeds,
                 const std::function<RunResult(const SimConfig&)>& runner) {
  double mse = 0.0;
  for (const std::uint64_t seed : seeds) {
    const RunResult r = runner(cli::build_sim_config(c, seed));
    const double m = empirical_mean(r.final_cloud.coordinate(0));
    mse += m * m;
  }
  return std::sqrt(mse / static_cast<double>(seeds.size()));
}

void criterion_4() {
  const auto t0 = Clock::now();
  const cli::ExperimentConfig base = cli::preset("rate-N");
  RunOptions options;
  options.trace_functional = false;
  std::vector<std::pair<double, double>> all, tail;
  for (const auto& point : cli::expand_sweep(base)) {
    const auto& c = point.config;
    const FredholmProblem problem = cli::build_problem(c, 0);
    const Regularization reg = cli::build_regularization(c);
    const double e = rmse_mean(c, c.seeds, [&](const SimConfig& s) { return run(problem, reg, s, options); });
    const auto n = static_cast<double>(c.sim.particles);
    all.emplace_back(n, e);
    if (n >= 200) tail.emplace_back(n, e);
  }
  const RateFit fit = fit_rate(tail);
  report("C4", "particle rate", fit.slope >= -0.8 && fit.slope <= -0.3,
         fmt("slope of sqrt(MSE mean) vs N on N >= 200 = %.3f (want [-0.8, -0.3]), r2 = %.3f", fit.slope, fit.r2),
         seconds_since(t0));
  std::string pts;
  for (const auto& [n, e] : all) pts += fmt("N=%g: %.4f  ", n, e);
  info(pts);
  info(fmt("slope over all N = %.3f", fit_rate(all).slope));
}

void criterion_5() {
  const auto t0 = Clock::now();
  const cli::ExperimentConfig base = cli::preset("rate-gamma");
  const double fine_step = base.sweep.front().values.front();
  RunOptions options;
  options.trace_functional = false;
  std::vector<std::pair<double, double>> pts;
  for (const auto& point : cli::expand_sweep(base)) {
    const auto& c = point.config;
    const FredholmProblem problem = cli::build_problem(c, 0);
    const Regularization reg = cli::build_regularization(c);
    const double gamma = c.sim.resolved_step();
    const auto ratio = static_cast<std::uint32_t>(std::lround(gamma / fine_step));
    // Common random numbers: every step size integrates the same Brownian path.
    const double e = rmse_mean(c, c.seeds, [&](const SimConfig& s) {
      const PhiloxNoise fine(s.seed);
      const AggregatedNoise coarse(fine, ratio);
      return run_from(init_cloud(s, problem.dim), problem, reg, s, coarse, options);
    });
    pts.emplace_back(gamma, e);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < pts.size(); ++i) monotone = monotone && pts[i].second >= pts[i - 1].second;
  std::string detail = "sqrt(MSE mean) over 10 seeds:";
  for (const auto& [g, e] : pts) detail += fmt(" g=%g:%.5f", g, e);
  report("C5", "step-size trend", monotone, detail + " (non-decreasing)", seconds_since(t0));
  info(fmt("slope vs gamma = %.3f", fit_rate(pts).slope));
}

void criterion_6() {
  const auto t0 = Clock::now();
  cli::ExperimentConfig base = cli::preset("toy-lambda-sweep");
  base.sweep = {{"lambda", {0.3, 0.6, 0.9}, {}}};
  RunOptions options;
  options.trace_functional = false;
  std::vector<double> ises;
  std::string detail;
  for (const auto& point : cli::expand_sweep(base)) {
    const auto& c = point.config;
    const FredholmProblem problem = cli::build_problem(c, 0);
    const Regularization reg = cli::build_regularization(c);
    const GridDensity truth = *cli::analytic_density(c, c.grid);
    std::vector<double> per_seed;
    for (const std::uint64_t seed : c.seeds) {
      const RunResult r = run(problem, reg, cli::build_sim_config(c, seed), options);
      per_seed.push_back(ise(plug_in_density(r.final_cloud, problem, c.grid), truth));
    }
    ises.push_back(mean_of(per_seed));
    detail += fmt("lambda=%g: %.2e  ", c.problem.lambda, ises.back());
  }
  const double lo = *std::min_element(ises.begin(), ises.end());
  const double hi = *std::max_element(ises.begin(), ises.end());
  report("C6", "stability in lambda", hi <= 3.0 * lo, detail + fmt("max/min = %.2f (<= 3)", hi / lo),
         seconds_since(t0));
}

// Independent root of 1 - w tan w on (0, pi/2).
double omega_oracle() {
  double lo = 1e-9, hi = std::numbers::pi / 2 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (1.0 - mid * std::tan(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void criterion_7() {
  const auto t0 = Clock::now();
  const double omega = omega_oracle();
  const double exact = 2.0 / (1.0 + omega * omega);
  const EigenSolution sol = nystrom_eig(ExponentialKernel(), {-1.0, 1.0, 500});
  const double err = std::abs(sol.eigenvalue - exact);
  const double secs = seconds_since(t0);
  report("C7", "Nystrom eigenvalue", err <= 1e-2 && secs < 10.0,
         fmt("mu = %.8f vs 2/(1+w^2) = %.8f, |diff| = %.2e (tol 1e-2)", sol.eigenvalue, exact, err), secs);
}

void criterion_8() {
  const auto t0 = Clock::now();
  const cli::ExperimentConfig c = cli::preset("kl-expansion");
  const FredholmProblem problem = cli::build_problem(c, 0);
  const Regularization reg = cli::build_regularization(c);
  const ExponentialEigenProblem exact = exponential_kernel_problem();
  const GridDensity truth = exact.reference_density(c.grid);

  const NystromGrid ngrid{c.baseline.a, c.baseline.b, c.baseline.n};
  const EigenSolution nys = nystrom_eig(*problem.kernel, ngrid);
  const double nys_ise = ise(nys.as_density(), exact.reference_density(ngrid.as_grid()));

  // The literal cos(mu x) form, for comparison only.
  const double mu = exact.eigenvalue;
  const auto literal = [&](const GridSpec& g) {
    return renormalized(tabulate(g, [mu](double x) { return std::abs(x) <= 1.0 ? std::cos(mu * x) : 0.0; }));
  };
  const double nys_ise_literal = ise(nys.as_density(), literal(ngrid.as_grid()));

  RunOptions options;
  options.trace_functional = false;
  std::vector<double> per_seed, per_seed_literal;
  for (const std::uint64_t seed : c.seeds) {
    const RunResult r = run(problem, reg, cli::build_sim_config(c, seed), options);
    const GridDensity est = renormalized(plug_in_density(r.final_cloud, problem, c.grid));
    per_seed.push_back(ise(est, truth));
    per_seed_literal.push_back(ise(est, literal(c.grid)));
  }
  const double particle_ise = mean_of(per_seed);
  report("C8", "KL eigenfunction recovery", particle_ise <= 2.0 * nys_ise,
         fmt("particle ISE = %.3e (5 seeds) vs 2 x Nystrom ISE = %.3e; ratio particle/Nystrom = %.3g", particle_ise,
             2.0 * nys_ise, particle_ise / nys_ise),
         seconds_since(t0));
  info(fmt("against the cos(mu x) form: particle ISE = %.3e, Nystrom ISE = %.3e (Nystrom/particle = %.2f)",
           mean_of(per_seed_literal), nys_ise_literal, nys_ise_literal / mean_of(per_seed_literal)));
}

void criterion_9() {
  const auto t0 = Clock::now();
  cli::ExperimentConfig c = cli::preset("gp-ssm");
  c.problem.gp.data_seed = 1;
  c.seeds = {1, 2, 3, 4, 5};
  const FredholmProblem problem = cli::build_problem(c, 0);
  const Regularization reg = cli::build_regularization(c);
  const auto* kernel = dynamic_cast<const GpPredictiveKernel*>(problem.kernel.get());
  const auto transition = [kernel](double y, double xi) {
    const GpPredictive p = kernel->predictive(y);
    return p.mean + std::sqrt(p.var) * xi;
  };

  RunOptions options;
  options.trace_functional = false;
  std::vector<double> w1s;
  for (const std::uint64_t seed : c.seeds) {
    const RunResult r = run(problem, reg, cli::build_sim_config(c, seed), options);
    w1s.push_back(transition_invariance_w1(r.final_cloud, transition, c.output.invariance_samples, seed));
  }
  const NystromGrid ngrid{c.baseline.a, c.baseline.b, c.baseline.n};
  const GridDensity inv = nystrom_invariant(*problem.kernel, ngrid);
  const double residual = invariant_residual(nystrom_matrix(*problem.kernel, ngrid), inv.values);
  const double w1 = mean_of(w1s);
  report("C9", "GP-SSM invariance", w1 <= 0.5 && residual <= 1e-3,
         fmt("W1(samples, pushed) = %.4f over 5 seeds (<= 0.5); Nystrom residual = %.2e (<= 1e-3)", w1, residual),
         seconds_since(t0));
}

void criterion_10() {
  const auto t0 = Clock::now();
  const fs::path root = fs::temp_directory_path() / "fredholm-acceptance-determinism";
  fs::remove_all(root);
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  bool pass = true;
  std::string detail;
  for (const auto& name : cli::preset_names()) {
    cli::ExperimentConfig c = cli::preset(name);
    const cli::RunPoint point = cli::expand_sweep(c).front();
    const std::uint64_t seed = c.seeds.front();
    std::string bytes[2];
    for (int k = 0; k < 2; ++k) {
      cli::RunPoint p = point;
      p.config.threads = k == 0 ? 1 : 4;
      p.config.output_dir = root / name / (k == 0 ? "t1" : "t4");
      const cli::SolveOutcome o = cli::solve_one(p, seed);
      bytes[k] = slurp(o.directory / "cloud.csv");
    }
    const bool same = !bytes[0].empty() && bytes[0] == bytes[1];
    pass = pass && same;
    detail += name + (same ? " ok  " : " DIFFERS  ");
  }
  fs::remove_all(root);
  report("C10", "determinism across workers", pass, detail + "(1 vs 4 threads, cloud CSV bytes)", seconds_since(t0));
}

void criterion_11() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> logu(-3.0, 9.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double b = std::pow(10.0, logu(rng) + 3.0);
    const double c1 = std::pow(10.0, logu(rng) / 3.0), c2 = std::pow(10.0, logu(rng) / 3.0);
    const BudgetPlan plan = plan_budget(b, c1, c2);
    const auto n = static_cast<double>(plan.n_opt);
    worst = std::max(worst, std::abs(n * n / plan.gamma_opt - b) / b);
  }
  report("C11", "plan_budget identity", worst <= 1e-9,
         fmt("max rel |N^2/gamma - B|/B = %.2e over 100 cases (tol 1e-9)", worst), seconds_since(t0));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_7();
  criterion_11();
  criterion_6();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_4();
  criterion_5();
  criterion_3();
  std::printf("%d failing criterion line(s)\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
