#pragma once

#include <vector>

#include "fredholm/cloud.hpp"
#include "fredholm/problems.hpp"

namespace fredholm {

/// denom[j] = λ·π^N[k(X^j, ·)] + φ(X^j) + η for every particle.
struct DriftScratch {
  std::vector<double> denom;
};

/// O(N²) precomputation. Sums run over i = 0..N−1 in order; parallel over j only.
/// Throws VanishingDenominatorError when some denom[j] <= 0.
DriftScratch pairwise_denominators(const ParticleCloud& cloud, const FredholmProblem& problem, double eta,
                                   int threads = 1);

/// b^η(x, z, ν) = λ∇₂k(z, x)/denom_z + (λ∇₁k(x, z) + ∇φ(x))/denom_x.
void b_eta(ConstPoint x, ConstPoint z, double denom_x, double denom_z, const FredholmProblem& problem,
           MutPoint out);

/// Full drift b(X^ℓ, π^N) = ∫b^η(X^ℓ, z, π^N) dπ^N(z) − α∇U(X^ℓ) for every particle,
/// returned row-major (N x d). Cost O(N²·d); output independent of `threads`.
std::vector<double> drift_all(const ParticleCloud& cloud, const DriftScratch& scratch,
                              const FredholmProblem& problem, const Regularization& reg, int threads = 1);

}  // namespace fredholm
