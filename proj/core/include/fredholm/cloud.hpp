#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fredholm {

/// N particle positions in R^d at one time step (row-major N x d).
class ParticleCloud {
 public:
  ParticleCloud() = default;
  ParticleCloud(std::size_t particles, int dim, std::size_t step = 0)
      : positions_(particles * static_cast<std::size_t>(dim)), dim_(dim), step_(step) {}
  ParticleCloud(std::vector<double> positions, int dim, std::size_t step = 0)
      : positions_(std::move(positions)), dim_(dim), step_(step) {}

  std::size_t size() const { return dim_ > 0 ? positions_.size() / static_cast<std::size_t>(dim_) : 0; }
  int dim() const { return dim_; }
  std::size_t step() const { return step_; }
  void set_step(std::size_t step) { step_ = step; }

  std::span<const double> point(std::size_t i) const {
    return {positions_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  std::span<double> point(std::size_t i) {
    return {positions_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }

  const std::vector<double>& positions() const { return positions_; }
  std::vector<double>& positions() { return positions_; }

  /// Coordinate `c` of every particle.
  std::vector<double> coordinate(int c = 0) const;

  bool operator==(const ParticleCloud&) const = default;

 private:
  std::vector<double> positions_;
  int dim_ = 1;
  std::size_t step_ = 0;
};

inline std::vector<double> ParticleCloud::coordinate(int c) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = positions_[i * static_cast<std::size_t>(dim_) + c];
  return out;
}

}  // namespace fredholm
