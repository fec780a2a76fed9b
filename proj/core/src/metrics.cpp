#include "fredholm/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "fredholm/errors.hpp"
#include "fredholm/noise.hpp"

namespace fredholm {
namespace {

std::vector<double> sorted_copy(std::span<const double> xs) {
  std::vector<double> out(xs.begin(), xs.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Empirical quantile at level u: linear interpolation between order statistics placed at (i + 1/2)/n.
double midpoint_quantile(const std::vector<double>& sorted, double u) {
  const double n = static_cast<double>(sorted.size());
  const double pos = std::clamp(u * n - 0.5, 0.0, n - 1.0);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double ise(const GridDensity& p, const GridDensity& q) {
  if (!(p.grid == q.grid) || p.values.size() != q.values.size()) {
    throw GridMismatchError("ISE needs densities on the same grid");
  }
  std::vector<double> sq(p.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const double d = p.values[i] - q.values[i];
    sq[i] = d * d;
  }
  return trapezoid(p.grid, sq);
}

double w1_empirical(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || ys.empty()) throw PreconditionError("W1 of an empty sample");
  const std::vector<double> a = sorted_copy(xs);
  const std::vector<double> b = sorted_copy(ys);
  double sum = 0.0;
  if (a.size() == b.size()) {
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return sum / static_cast<double>(a.size());
  }
  const std::size_t m = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < m; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
    sum += std::abs(midpoint_quantile(a, u) - midpoint_quantile(b, u));
  }
  return sum / static_cast<double>(m);
}

double w1_to_quantiles(std::span<const double> xs, const std::function<double(double)>& quantile) {
  if (xs.empty()) throw PreconditionError("W1 of an empty sample");
  const std::vector<double> a = sorted_copy(xs);
  const auto n = static_cast<double>(a.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::abs(a[i] - quantile((static_cast<double>(i) + 0.5) / n));
  }
  return sum / n;
}

std::function<double(double)> gaussian_quantile(double mean, double sd) {
  if (!(sd > 0.0)) throw PreconditionError("standard deviation must be > 0");
  const boost::math::normal_distribution<double> law(mean, sd);
  return [law](double u) { return boost::math::quantile(law, u); };
}

double empirical_mean(std::span<const double> xs) {
  if (xs.empty()) throw PreconditionError("mean of an empty sample");
  double s = 0.0;
  for (double v : xs) s += v;
  return s / static_cast<double>(xs.size());
}

double empirical_variance(std::span<const double> xs) {
  const double m = empirical_mean(xs);
  double s = 0.0;
  for (double v : xs) s += (v - m) * (v - m);
  return s / static_cast<double>(xs.size());
}

MomentMse moment_mse(const std::vector<ParticleCloud>& runs, double target_mean, double target_var) {
  if (runs.empty()) throw PreconditionError("moment MSE needs at least one run");
  MomentMse out;
  for (const auto& cloud : runs) {
    const std::vector<double> xs = cloud.coordinate(0);
    const double dm = empirical_mean(xs) - target_mean;
    const double dv = empirical_variance(xs) - target_var;
    out.mean += dm * dm;
    out.var += dv * dv;
  }
  out.mean /= static_cast<double>(runs.size());
  out.var /= static_cast<double>(runs.size());
  return out;
}

RateFit fit_rate(std::vector<std::pair<double, double>> points) {
  if (points.size() < 3) throw PreconditionError("rate fit needs at least 3 points");
  const auto n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [s, e] : points) {
    if (!(s > 0.0) || !(e > 0.0)) throw PreconditionError("rate fit needs positive scales and errors");
    sx += std::log(s);
    sy += std::log(e);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [s, e] : points) {
    const double dx = std::log(s) - mx, dy = std::log(e) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw PreconditionError("rate fit needs at least two distinct scales");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.points = std::move(points);
  return fit;
}

double transition_invariance_w1(const ParticleCloud& cloud,
                                const std::function<double(double, double)>& transition, std::size_t samples,
                                std::uint64_t seed) {
  if (cloud.dim() != 1 || cloud.size() == 0) throw PreconditionError("invariance check needs a 1-D cloud");
  if (samples == 0) throw PreconditionError("invariance check needs samples");
  const CounterRng rng(seed);
  using D = CounterRng::Domain;
  const std::size_t n = cloud.size();
  std::vector<double> drawn(samples), pushed(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const double u = rng.uniform(D::kMetric, 0, s, 0);
    const std::size_t k = std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)));
    drawn[s] = transition(cloud.point(k)[0], rng.normal(D::kMetric, 1, s, 0));
    pushed[s] = transition(drawn[s], rng.normal(D::kMetric, 2, s, 0));
  }
  return w1_empirical(drawn, pushed);
}

}  // namespace fredholm
