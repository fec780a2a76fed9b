#pragma once

#include <functional>
#include <optional>
#include <span>

#include "fredholm/cloud.hpp"
#include "fredholm/grid.hpp"
#include "fredholm/problems.hpp"

namespace fredholm {

/// π̂(x) = φ(x) + (λ/N) Σ_k k(x, X^k) on a 1-D grid. Negative values (λ < 0 only)
/// are clamped to zero and counted in GridDensity::clamped.
GridDensity plug_in_density(const ParticleCloud& cloud, const FredholmProblem& problem, const GridSpec& grid,
                            int threads = 1);

/// Pointwise π̂ for any dimension. Keeps a copy of the cloud.
std::function<double(ConstPoint)> plug_in_evaluator(const ParticleCloud& cloud, const FredholmProblem& problem);

/// h = 0.9 · min(sd, IQR/1.34) · N^{−1/5}; falls back to sd when IQR is zero and to
/// 1e−6·(1 + |x|) for a degenerate sample.
double silverman_bandwidth(std::span<const double> samples);

/// Gaussian-kernel density estimate of a 1-D cloud.
GridDensity kde_density(const ParticleCloud& cloud, const GridSpec& grid, std::optional<double> bandwidth = {});

struct FunctionalEstimate {
  double kl_data = 0.0;
  double kl_reg = 0.0;
  double total = 0.0;
};

/// Grid estimate of F_α^η: kl_data = ∫ p̂ log(p̂/(π̂ + η)), kl_reg = ∫ p̂ log(p̂/π₀), with p̂ the KDE.
/// For the flat reference kl_reg is ∫ p̂ log p̂ (KL up to a constant); without a reference it is zero.
FunctionalEstimate estimate_functional(const ParticleCloud& cloud, const FredholmProblem& problem,
                                       const Regularization& reg, const GridSpec& grid);

}  // namespace fredholm
