#include <random>

#include <benchmark/benchmark.h>

#include "fredholm/baselines.hpp"
#include "fredholm/drift.hpp"
#include "fredholm/gp_model.hpp"
#include "fredholm/reconstruct.hpp"
#include "fredholm/sde.hpp"

using namespace fredholm;

namespace {

ParticleCloud gaussian_cloud(std::size_t n, std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  ParticleCloud c(n, 1);
  for (double& v : c.positions()) v = g(rng);
  return c;
}

const Regularization& toy_reg() {
  static const Regularization reg{0.1, 0.0, std::make_shared<GaussianReference>(0.0, 1.0)};
  return reg;
}

void BM_Denominators(benchmark::State& state) {
  const auto problem = gaussian_toy_problem(0.5, 0.5);
  const auto cloud = gaussian_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_denominators(cloud, problem, 0.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Denominators)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_DriftAll(benchmark::State& state) {
  const auto problem = gaussian_toy_problem(0.5, 0.5);
  const auto cloud = gaussian_cloud(static_cast<std::size_t>(state.range(0)));
  const auto scratch = pairwise_denominators(cloud, problem, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(drift_all(cloud, scratch, problem, toy_reg()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DriftAll)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_DriftAllGp(benchmark::State& state) {
  const auto data = gp_ssm_training_data(20, 1);
  const auto problem = gp_ssm_problem(gp_fit(data.x, data.z, 3.59 * 3.59, 4.21 * 4.21));
  const auto cloud = gaussian_cloud(static_cast<std::size_t>(state.range(0)));
  const auto scratch = pairwise_denominators(cloud, problem, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(drift_all(cloud, scratch, problem, toy_reg()));
}
BENCHMARK(BM_DriftAllGp)->Arg(200);

void BM_EulerStep(benchmark::State& state) {
  const auto problem = gaussian_toy_problem(0.5, 0.5);
  const PhiloxNoise noise(1);
  ParticleCloud cloud = gaussian_cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) cloud = euler_step(cloud, problem, toy_reg(), 1e-3, noise);
}
BENCHMARK(BM_EulerStep)->Arg(100)->Arg(500);

void BM_PlugInDensity(benchmark::State& state) {
  const auto problem = gaussian_toy_problem(0.5, 0.5);
  const auto cloud = gaussian_cloud(500);
  const GridSpec grid{-8.0, 8.0, 1601};
  for (auto _ : state) benchmark::DoNotOptimize(plug_in_density(cloud, problem, grid));
}
BENCHMARK(BM_PlugInDensity);

void BM_FunctionalEstimate(benchmark::State& state) {
  const auto problem = gaussian_toy_problem(0.5, 0.5);
  const auto cloud = gaussian_cloud(500);
  const GridSpec grid{-8.0, 8.0, 1601};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_functional(cloud, problem, toy_reg(), grid));
}
BENCHMARK(BM_FunctionalEstimate);

void BM_NystromEig(benchmark::State& state) {
  const ExponentialKernel kernel;
  const NystromGrid grid{-1.0, 1.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(nystrom_eig(kernel, grid));
}
BENCHMARK(BM_NystromEig)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
