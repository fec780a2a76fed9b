#include "fredholm/drift.hpp"

#include <cmath>

#include "fredholm/errors.hpp"
#include "fredholm/parallel.hpp"

namespace fredholm {

DriftScratch pairwise_denominators(const ParticleCloud& cloud, const FredholmProblem& problem, double eta,
                                   int threads) {
  const std::size_t n = cloud.size();
  if (n == 0) throw PreconditionError("cloud is empty");
  if (!(eta >= 0.0)) throw PreconditionError("eta must be >= 0");
  const Kernel& kernel = *problem.kernel;
  const Forcing& forcing = *problem.forcing;
  const double inv_n = 1.0 / static_cast<double>(n);

  DriftScratch scratch{std::vector<double>(n)};
  parallel_for(n, threads, [&](std::size_t j) {
    const auto xj = cloud.point(j);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += kernel.eval(xj, cloud.point(i));
    scratch.denom[j] = problem.lambda * (sum * inv_n) + forcing.eval(xj) + eta;
  });
  for (std::size_t j = 0; j < n; ++j) {
    if (!(scratch.denom[j] > 0.0)) throw VanishingDenominatorError(j, scratch.denom[j]);
  }
  return scratch;
}

void b_eta(ConstPoint x, ConstPoint z, double denom_x, double denom_z, const FredholmProblem& problem,
           MutPoint out) {
  const std::size_t d = x.size();
  std::vector<double> g2(d), g1(d), gphi(d);
  problem.kernel->grad2(z, x, g2);
  problem.kernel->grad1(x, z, g1);
  problem.forcing->grad(x, gphi);
  for (std::size_t c = 0; c < d; ++c) {
    out[c] = problem.lambda * g2[c] / denom_z + (problem.lambda * g1[c] + gphi[c]) / denom_x;
  }
}

std::vector<double> drift_all(const ParticleCloud& cloud, const DriftScratch& scratch,
                              const FredholmProblem& problem, const Regularization& reg, int threads) {
  const std::size_t n = cloud.size();
  const auto d = static_cast<std::size_t>(cloud.dim());
  if (scratch.denom.size() != n) throw PreconditionError("scratch was computed for a different cloud");
  const Kernel& kernel = *problem.kernel;
  const Forcing& forcing = *problem.forcing;
  const double lambda = problem.lambda;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> drift(n * d);
  parallel_for(n, threads, [&](std::size_t l) {
    const auto xl = cloud.point(l);
    // Small fixed-size work buffers; d is tiny in practice.
    std::vector<double> interaction(d, 0.0), self(d, 0.0), g(d), gphi(d), gu(d, 0.0);
    for (std::size_t z = 0; z < n; ++z) {
      const auto xz = cloud.point(z);
      kernel.grad2(xz, xl, g);
      const double inv_denom = 1.0 / scratch.denom[z];
      for (std::size_t c = 0; c < d; ++c) interaction[c] += g[c] * inv_denom;
      kernel.grad1(xl, xz, g);
      for (std::size_t c = 0; c < d; ++c) self[c] += g[c];
    }
    forcing.grad(xl, gphi);
    if (reg.alpha != 0.0) reg.reference->grad_potential(xl, gu);
    for (std::size_t c = 0; c < d; ++c) {
      drift[l * d + c] = lambda * interaction[c] * inv_n +
                         (lambda * self[c] * inv_n + gphi[c]) / scratch.denom[l] - reg.alpha * gu[c];
    }
  });
  return drift;
}

}  // namespace fredholm
