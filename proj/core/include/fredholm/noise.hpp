#pragma once

#include <array>
#include <cstdint>

namespace fredholm {

/// Philox4x32-10 counter-based generator. Every draw is a pure function of
/// (seed, domain, step, stream, coordinate), so parallel evaluation order and
/// worker count never change the numbers produced.
class CounterRng {
 public:
  enum class Domain : std::uint32_t {
    kDiffusion = 0,
    kInit = 1,
    kTrainingData = 2,
    kResample = 3,
    kMetric = 4,
  };

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::array<std::uint32_t, 4> block(Domain domain, std::uint64_t step, std::uint64_t stream,
                                     std::uint32_t coord) const;

  /// Uniform on the open interval (0, 1).
  double uniform(Domain domain, std::uint64_t step, std::uint64_t stream, std::uint32_t coord) const;

  /// Standard normal via Box-Muller on one Philox block.
  double normal(Domain domain, std::uint64_t step, std::uint64_t stream, std::uint32_t coord) const;

 private:
  std::uint64_t seed_;
};

/// Source of the standard Gaussian increments Z_{n}^{k} of the Euler scheme.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual double normal(std::uint64_t step, std::uint64_t particle, std::uint32_t coord) const = 0;
};

/// Default source: one Philox stream per particle.
class PhiloxNoise final : public NoiseSource {
 public:
  explicit PhiloxNoise(std::uint64_t seed) : rng_(seed) {}
  double normal(std::uint64_t step, std::uint64_t particle, std::uint32_t coord) const override {
    return rng_.normal(CounterRng::Domain::kDiffusion, step, particle, coord);
  }

 private:
  CounterRng rng_;
};

/// Increments for step size r·γ built from r consecutive increments of a fine
/// source at step γ, so coarse and fine runs follow the same Brownian path.
class AggregatedNoise final : public NoiseSource {
 public:
  AggregatedNoise(const NoiseSource& fine, std::uint32_t ratio) : fine_(fine), ratio_(ratio) {}
  double normal(std::uint64_t step, std::uint64_t particle, std::uint32_t coord) const override;

 private:
  const NoiseSource& fine_;
  std::uint32_t ratio_;
};

}  // namespace fredholm
