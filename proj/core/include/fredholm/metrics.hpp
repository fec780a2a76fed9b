#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fredholm/cloud.hpp"
#include "fredholm/grid.hpp"

namespace fredholm {

/// ∫ (p − q)² by the trapezoid rule. Throws GridMismatchError unless p.grid == q.grid.
double ise(const GridDensity& p, const GridDensity& q);

/// 1-D Wasserstein-1 between two samples. Equal sizes use order statistics;
/// otherwise both empirical quantile functions are compared on max(n, m) points.
double w1_empirical(std::span<const double> xs, std::span<const double> ys);

/// W1 between a sample and a continuous law given by its quantile function,
/// evaluated at the n midpoint levels (i + 1/2)/n.
double w1_to_quantiles(std::span<const double> xs, const std::function<double(double)>& quantile);

std::function<double(double)> gaussian_quantile(double mean, double sd);

double empirical_mean(std::span<const double> xs);
/// Population variance (divides by n), i.e. the variance of the empirical measure.
double empirical_variance(std::span<const double> xs);

struct MomentMse {
  double mean = 0.0;
  double var = 0.0;
};

/// Average over runs of (moment − target)² for the first coordinate.
MomentMse moment_mse(const std::vector<ParticleCloud>& runs, double target_mean, double target_var);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::vector<std::pair<double, double>> points;
};

/// Ordinary least squares of log(error) on log(scale).
RateFit fit_rate(std::vector<std::pair<double, double>> points);

/// Draws `samples` points X from the mixture (1/N)Σ q(·|X^k), pushes each once
/// more through q and returns W1 between the two samples. `transition(y, xi)`
/// maps a state and a standard normal to the next state.
double transition_invariance_w1(const ParticleCloud& cloud,
                                const std::function<double(double, double)>& transition, std::size_t samples,
                                std::uint64_t seed);

}  // namespace fredholm
