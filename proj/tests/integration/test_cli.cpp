#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "fredholm/io.hpp"
#include "fredholm_cli/commands.hpp"
#include "fredholm_cli/config.hpp"

namespace fs = std::filesystem;
using namespace fredholm;
using namespace fredholm::cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fredholm-it-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FREDHOLM_EXE) + " " + args + " 2>/dev/null >/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

// A cheap toy run: small N and horizon, two snapshots.
const char* kSmallToy = R"(experiment: custom
problem: {kind: gaussian-toy, lambda: 0.5, beta: 0.5}
regularization: {alpha: 0.1, reference: {kind: gaussian, mean: 0, var: 1}}
sim: {particles: 30, step: 0.05, horizon: 12, snapshot_every: 5}
grid: {lo: -6, hi: 6, points: 241}
seeds: [4]
)";

}  // namespace

TEST(Config, EveryPresetRoundTripsThroughYaml) {
  for (const auto& name : preset_names()) {
    const ExperimentConfig c = preset(name);
    EXPECT_NO_THROW(c.validate()) << name;
    const std::string yaml = to_yaml(c);
    EXPECT_EQ(to_yaml(parse_config(yaml)), yaml) << name;
  }
}

TEST(Config, PublishedDefaultsInPresets) {
  const ExperimentConfig kl = preset("kl-expansion");
  EXPECT_EQ(kl.sim.particles, 500u);
  EXPECT_DOUBLE_EQ(kl.sim.resolved_step(), 1.0 / 500.0);
  EXPECT_EQ(kl.sim.horizon, 400u);
  EXPECT_DOUBLE_EQ(kl.alpha, 1e-2);
  EXPECT_DOUBLE_EQ(kl.reference.var, 0.05 * 0.05);
  EXPECT_EQ(kl.baseline.n, 500u);

  const ExperimentConfig gp = preset("gp-ssm");
  EXPECT_EQ(gp.sim.particles, 200u);
  EXPECT_DOUBLE_EQ(gp.sim.resolved_step(), 1.0 / 200.0);
  EXPECT_EQ(gp.sim.horizon, 100u);
  EXPECT_DOUBLE_EQ(gp.alpha, 1e-3);
  EXPECT_DOUBLE_EQ(gp.baseline.a, -20.0);
  EXPECT_DOUBLE_EQ(gp.baseline.b, 10.0);

  const ExperimentConfig toy = preset("custom");
  EXPECT_EQ(toy.sim.particles, 100u);
  EXPECT_DOUBLE_EQ(toy.sim.resolved_step(), 1e-2);
  EXPECT_EQ(toy.sim.horizon, 200u);
  EXPECT_DOUBLE_EQ(toy.alpha, 0.01);
}

TEST(Config, OverridesApplyOnTopOfPreset) {
  const ExperimentConfig c = parse_config("experiment: kl-expansion\nsim: {particles: 50}\nseeds: {first: 3, count: 2}\n");
  EXPECT_EQ(c.problem.kind, "exponential-kl");
  EXPECT_EQ(c.sim.particles, 50u);
  EXPECT_DOUBLE_EQ(c.sim.resolved_step(), 1.0 / 50.0);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{3, 4}));
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse_config("sim: {particles: 10, partcles: 3}\n"), ConfigError);
  EXPECT_THROW(parse_config("experiment: nonsense\n"), ConfigError);
  EXPECT_THROW(parse_config("sim: {step: fast}\n"), ConfigError);
  EXPECT_THROW(parse_config("seeds: []\n"), ConfigError);
  EXPECT_THROW(parse_config("sim: [1, 2\n"), ConfigError);
  EXPECT_THROW(parse_config("sim: {init: {kind: samples, path: /no/such/file.csv}}\n"), ConfigError);
  EXPECT_THROW(parse_config("sweep: [{parameter: gamma, values: [1]}]\n"), ConfigError);
}

TEST(Config, DurationFixesTheTimeHorizon) {
  ExperimentConfig c = preset("rate-gamma");
  const auto points = expand_sweep(c);
  ASSERT_EQ(points.size(), 4u);
  EXPECT_EQ(points[0].config.sim.resolved_horizon(), 200u);
  EXPECT_EQ(points[3].config.sim.resolved_horizon(), 20u);
}

TEST(Sweep, CartesianProductAndLabels) {
  const auto points = expand_sweep(preset("toy-reference-sweep"));
  ASSERT_EQ(points.size(), 28u);
  EXPECT_EQ(points[0].label, "alpha=0/reference=target");
  EXPECT_EQ(points[0].tag, "reference=target");
  EXPECT_EQ(points[3].config.reference.kind, "flat");
  EXPECT_DOUBLE_EQ(points[27].config.alpha, 1.0);
  for (const auto& p : points) EXPECT_TRUE(p.config.sweep.empty());
}

TEST(Cli, PlanBudget) {
  EXPECT_EQ(run_cli("plan-budget --budget 1e6 --c1 0.075 --c2 0.1"), 0);
  EXPECT_EQ(run_cli("plan-budget --budget -1 --c1 1 --c2 1"), 2);
  EXPECT_EQ(run_cli("plan-budget --budget 10"), 2);
}

TEST(Cli, SolveOutputsRoundTrip) {
  const fs::path dir = scratch("roundtrip");
  const fs::path cfg = write_file(dir / "in.yaml", kSmallToy);
  ASSERT_EQ(run_cli("solve --config " + cfg.string() + " --out " + (dir / "out").string()), 0);

  const fs::path run_dir = dir / "out" / "seed-4";
  for (const char* f : {"cloud.csv", "density.csv", "trace.csv", "summary.csv"}) {
    EXPECT_TRUE(fs::exists(run_dir / f)) << f;
  }
  EXPECT_TRUE(fs::exists(dir / "out" / "config.yaml"));

  // Same run in-process: the CSVs must parse back to exactly these values.
  ExperimentConfig c = parse_config(kSmallToy);
  c.output_dir = dir / "inproc";
  const SolveOutcome o = solve_one(expand_sweep(c).front(), 4);

  const auto clouds = read_clouds(run_dir / "cloud.csv");
  ASSERT_EQ(clouds.size(), 4u);  // steps 0, 5, 10, 12
  EXPECT_EQ(clouds.back().step(), 12u);
  EXPECT_EQ(clouds.back(), o.result.final_cloud);

  const GridDensity density = read_grid_density(run_dir / "density.csv");
  EXPECT_EQ(density.values, o.density.values);

  const auto trace = read_trace(run_dir / "trace.csv");
  ASSERT_EQ(trace.size(), o.result.trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    EXPECT_EQ(trace[i].step, o.result.trace[i].step);
    EXPECT_EQ(trace[i].functional, o.result.trace[i].functional);
    EXPECT_EQ(trace[i].w1, o.result.trace[i].w1);
  }
  EXPECT_EQ(read_summary(run_dir / "summary.csv"), o.summary);
}

TEST(Cli, ConfigEchoReproducesRunBitForBit) {
  const fs::path dir = scratch("echo");
  const fs::path cfg = write_file(dir / "in.yaml", kSmallToy);
  ASSERT_EQ(run_cli("solve --config " + cfg.string() + " --out " + (dir / "a").string()), 0);
  ASSERT_EQ(run_cli("solve --config " + (dir / "a" / "config.yaml").string() + " --out " + (dir / "b").string()), 0);
  EXPECT_EQ(slurp(dir / "a" / "seed-4" / "cloud.csv"), slurp(dir / "b" / "seed-4" / "cloud.csv"));
  EXPECT_EQ(slurp(dir / "a" / "seed-4" / "summary.csv"), slurp(dir / "b" / "seed-4" / "summary.csv"));
}

TEST(Cli, WorkerCountDoesNotChangeOutput) {
  const fs::path dir = scratch("threads");
  const fs::path cfg = write_file(dir / "in.yaml", kSmallToy);
  ASSERT_EQ(run_cli("solve --config " + cfg.string() + " --threads 1 --out " + (dir / "t1").string()), 0);
  ASSERT_EQ(run_cli("solve --config " + cfg.string() + " --threads 3 --out " + (dir / "t3").string()), 0);
  EXPECT_EQ(slurp(dir / "t1" / "seed-4" / "cloud.csv"), slurp(dir / "t3" / "seed-4" / "cloud.csv"));
}

TEST(Cli, EnvironmentMirrorsFlags) {
  const fs::path dir = scratch("env");
  const fs::path cfg = write_file(dir / "in.yaml", kSmallToy);
  ASSERT_EQ(run_cli("solve --config " + cfg.string() + " --seed 9 --out " + (dir / "flag").string()), 0);
  const std::string env = "FREDHOLM_SEED=9 FREDHOLM_OUT=" + (dir / "env").string() + " FREDHOLM_CONFIG=" + cfg.string();
  const int status = std::system((env + " " + FREDHOLM_EXE + " solve >/dev/null 2>&1").c_str());
  ASSERT_EQ(WEXITSTATUS(status), 0);
  EXPECT_EQ(slurp(dir / "flag" / "seed-9" / "cloud.csv"), slurp(dir / "env" / "seed-9" / "cloud.csv"));
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("exit");
  const fs::path bad = write_file(dir / "bad.yaml", "sim: {particles: -3}\n");
  EXPECT_EQ(run_cli("solve --config " + bad.string() + " --out " + (dir / "o").string()), 2);
  EXPECT_EQ(run_cli("solve --preset not-a-preset"), 2);

  // A vanishingly narrow reference measure throws the particles to infinity.
  const fs::path blowup = write_file(dir / "blowup.yaml", R"(problem: {kind: constant-kernel}
regularization: {alpha: 1, reference: {kind: gaussian, mean: 0, var: 1e-300}}
sim: {particles: 5, step: 0.5, horizon: 10, init: {kind: gaussian, mean: 0, sd: 1}}
)");
  EXPECT_EQ(run_cli("solve --config " + blowup.string() + " --out " + (dir / "o").string()), 3);
}

TEST(Cli, BaselineConstantKernelHasEigenvalueTwo) {
  const fs::path dir = scratch("baseline");
  const fs::path cfg = write_file(dir / "k1.yaml", "problem: {kind: constant-kernel}\nbaseline: {a: -1, b: 1, n: 50}\n");
  ASSERT_EQ(run_cli("baseline --config " + cfg.string() + " --out " + dir.string()), 0);
  bool found = false;
  for (const auto& r : read_summary(dir / "baseline" / "summary.csv")) {
    if (r.metric == "eigenvalue") {
      EXPECT_NEAR(r.value, 2.0, 1e-12);
      found = true;
    }
  }
  EXPECT_TRUE(found);
  const GridDensity v = read_grid_density(dir / "baseline" / "density.csv");
  for (double x : v.values) EXPECT_NEAR(x, 0.5, 1e-10);
}

TEST(Cli, ReportFitsRatesAndRejectsEmptyDirectories) {
  const fs::path dir = scratch("report");
  fs::create_directories(dir / "empty");
  EXPECT_NE(run_cli("report " + (dir / "empty").string()), 0);

  const fs::path cfg = write_file(dir / "rate.yaml", R"(problem: {kind: gaussian-toy}
regularization: {alpha: 0.1}
sim: {particles: 10, step: 0.05, horizon: 4}
grid: {lo: -6, hi: 6, points: 121}
seeds: [1, 2]
sweep: [{parameter: particles, values: [10, 20, 40]}]
)");
  ASSERT_EQ(run_cli("solve --config " + cfg.string() + " --out " + (dir / "runs").string()), 0);
  ASSERT_EQ(run_cli("report " + (dir / "runs").string()), 0);
  const std::string rates = slurp(dir / "runs" / "report" / "rates.csv");
  EXPECT_NE(rates.find("custom,rmse_mean,N,"), std::string::npos) << rates;
  EXPECT_TRUE(fs::exists(dir / "runs" / "report" / "aggregate.csv"));
  EXPECT_TRUE(fs::exists(dir / "runs" / "report" / "curves.csv"));
}
