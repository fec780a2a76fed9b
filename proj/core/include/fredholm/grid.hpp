#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fredholm {

/// Uniform 1-D grid lo = g_0 < ... < g_{points-1} = hi.
struct GridSpec {
  double lo = -8.0;
  double hi = 8.0;
  std::size_t points = 1601;

  double spacing() const { return (hi - lo) / static_cast<double>(points - 1); }
  double at(std::size_t i) const;
  std::vector<double> nodes() const;
  void validate() const;

  bool operator==(const GridSpec&) const = default;
};

/// Density values on a grid; carrier for reconstructions and references.
struct GridDensity {
  GridSpec grid;
  std::vector<double> values;
  /// Points clamped to zero while building the density.
  std::size_t clamped = 0;

  double integral() const;
};

/// Trapezoid rule on a uniform grid.
double trapezoid(const GridSpec& grid, std::span<const double> values);

GridDensity tabulate(const GridSpec& grid, const std::function<double(double)>& f);

/// Rescales so the trapezoid integral is one. Throws if the integral is not positive.
GridDensity renormalized(GridDensity density);

}  // namespace fredholm
