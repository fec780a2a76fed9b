#include "fredholm/grid.hpp"

#include <cmath>

#include "fredholm/errors.hpp"

namespace fredholm {

double GridSpec::at(std::size_t i) const {
  if (i + 1 == points) return hi;
  return lo + spacing() * static_cast<double>(i);
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) out[i] = at(i);
  return out;
}

void GridSpec::validate() const {
  if (points < 2) throw PreconditionError("grid needs at least 2 points");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw PreconditionError("grid bounds must be finite with hi > lo");
  }
}

double GridDensity::integral() const { return trapezoid(grid, values); }

double trapezoid(const GridSpec& grid, std::span<const double> values) {
  if (values.size() != grid.points) throw GridMismatchError("value count does not match grid size");
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  sum += 0.5 * (values.front() + values.back());
  return sum * grid.spacing();
}

GridDensity tabulate(const GridSpec& grid, const std::function<double(double)>& f) {
  grid.validate();
  GridDensity out{grid, std::vector<double>(grid.points), 0};
  for (std::size_t i = 0; i < grid.points; ++i) out.values[i] = f(grid.at(i));
  return out;
}

GridDensity renormalized(GridDensity density) {
  const double mass = density.integral();
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw PreconditionError("cannot renormalize a density with non-positive mass");
  }
  for (double& v : density.values) v /= mass;
  return density;
}

}  // namespace fredholm
