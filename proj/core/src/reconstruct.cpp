#include "fredholm/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fredholm/errors.hpp"
#include "fredholm/parallel.hpp"

namespace fredholm {
namespace {

constexpr double kDensityFloor = 1e-30;

// Type-7 (linear interpolation) quantile of sorted data.
double sorted_quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void require_one_d(const ParticleCloud& cloud) {
  if (cloud.dim() != 1) throw PreconditionError("grid densities need a one-dimensional cloud");
  if (cloud.size() == 0) throw PreconditionError("cloud is empty");
}

}  // namespace

GridDensity plug_in_density(const ParticleCloud& cloud, const FredholmProblem& problem, const GridSpec& grid,
                            int threads) {
  require_one_d(cloud);
  problem.validate();
  grid.validate();
  const Kernel& kernel = *problem.kernel;
  const Forcing& forcing = *problem.forcing;
  const std::size_t n = cloud.size();
  const double scale = problem.lambda / static_cast<double>(n);

  GridDensity out{grid, std::vector<double>(grid.points), 0};
  parallel_for(grid.points, threads, [&](std::size_t g) {
    const double x[1] = {grid.at(g)};
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += kernel.eval(x, cloud.point(k));
    out.values[g] = forcing.eval(x) + scale * sum;
  });
  for (double& v : out.values) {
    if (v < 0.0) {
      v = 0.0;
      ++out.clamped;
    }
  }
  return out;
}

std::function<double(ConstPoint)> plug_in_evaluator(const ParticleCloud& cloud, const FredholmProblem& problem) {
  problem.validate();
  if (cloud.dim() != problem.dim) throw PreconditionError("cloud dimension does not match the problem");
  return [cloud, problem](ConstPoint x) {
    double sum = 0.0;
    for (std::size_t k = 0; k < cloud.size(); ++k) sum += problem.kernel->eval(x, cloud.point(k));
    return problem.forcing->eval(x) + problem.lambda * sum / static_cast<double>(cloud.size());
  };
}

double silverman_bandwidth(std::span<const double> samples) {
  if (samples.empty()) throw PreconditionError("bandwidth of an empty sample");
  const auto n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double sd = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);

  double spread = sd;
  if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) return 1e-6 * (1.0 + std::abs(mean));
  return 0.9 * spread * std::pow(n, -0.2);
}

GridDensity kde_density(const ParticleCloud& cloud, const GridSpec& grid, std::optional<double> bandwidth) {
  require_one_d(cloud);
  grid.validate();
  const std::vector<double> xs = cloud.coordinate(0);
  const double h = bandwidth ? *bandwidth : silverman_bandwidth(xs);
  if (!(h > 0.0)) throw PreconditionError("bandwidth must be > 0");

  const double inv_h = 1.0 / h;
  const double norm = inv_h / (std::sqrt(2.0 * std::numbers::pi) * static_cast<double>(xs.size()));
  GridDensity out{grid, std::vector<double>(grid.points), 0};
  for (std::size_t g = 0; g < grid.points; ++g) {
    const double x = grid.at(g);
    double sum = 0.0;
    for (double s : xs) {
      const double u = (x - s) * inv_h;
      sum += std::exp(-0.5 * u * u);
    }
    out.values[g] = norm * sum;
  }
  return out;
}

FunctionalEstimate estimate_functional(const ParticleCloud& cloud, const FredholmProblem& problem,
                                       const Regularization& reg, const GridSpec& grid) {
  reg.validate();
  const GridDensity p = kde_density(cloud, grid);
  const GridDensity rhs = plug_in_density(cloud, problem, grid);

  std::vector<double> data(grid.points, 0.0);
  std::vector<double> ref(grid.points, 0.0);
  for (std::size_t g = 0; g < grid.points; ++g) {
    const double pv = p.values[g];
    if (pv < kDensityFloor) continue;
    const double q = rhs.values[g] + reg.eta;
    if (!(q > 0.0)) throw SupportMismatchError("right-hand side vanishes where the particle density is positive");
    data[g] = pv * std::log(pv / q);
    if (reg.reference) {
      const double x[1] = {grid.at(g)};
      const double r = reg.reference->density(x);
      // Improper (flat) reference: KL reduces to ∫ p log p up to a constant.
      ref[g] = std::isnan(r) ? pv * std::log(pv) : pv * std::log(pv / r);
    }
  }

  FunctionalEstimate out;
  out.kl_data = trapezoid(grid, data);
  out.kl_reg = reg.reference ? trapezoid(grid, ref) : 0.0;
  out.total = out.kl_data + reg.alpha * out.kl_reg;
  return out;
}

}  // namespace fredholm
