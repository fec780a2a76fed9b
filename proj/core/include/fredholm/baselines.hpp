#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fredholm/grid.hpp"
#include "fredholm/problems.hpp"

namespace fredholm {

/// Rectangle-rule discretization of [a, b]: n cells of width Δ = (b − a)/n,
/// one node at the midpoint of each cell.
struct NystromGrid {
  double a = -1.0;
  double b = 1.0;
  std::size_t n = 500;

  double weight() const { return (b - a) / static_cast<double>(n); }
  double node(std::size_t i) const { return a + (static_cast<double>(i) + 0.5) * weight(); }
  std::vector<double> nodes() const;
  /// The nodes as a uniform GridSpec (first to last midpoint).
  GridSpec as_grid() const;
  void validate() const;
};

/// A_{ij} = k(x_i, x_j)·Δ: rows index the first kernel argument (next state), columns the second.
Eigen::MatrixXd nystrom_matrix(const Kernel& kernel, const NystromGrid& grid, int threads = 1);

struct EigenSolution {
  NystromGrid grid;
  double eigenvalue = 0.0;
  /// Σ v_i Δ = 1, with v ≥ 0 at the node nearest 0.
  std::vector<double> values;
  /// ‖A v − μ v‖_∞ / ‖v‖_∞
  double residual = 0.0;

  GridDensity as_density() const { return {grid.as_grid(), values, 0}; }
};

enum class EigenMethod { kAuto, kDense, kPower };

struct PowerOptions {
  double shift = 0.0;
  double tol = 1e-11;
  std::size_t max_iterations = 100000;
};

/// Dominant eigenpair of the Nyström matrix. kAuto uses the dense solver for n ≤ 600.
/// Throws ConvergenceError when power iteration exhausts max_iterations.
EigenSolution nystrom_eig(const Kernel& kernel, const NystromGrid& grid, EigenMethod method = EigenMethod::kAuto,
                          const PowerOptions& power = {});

enum class InvariantMethod {
  /// Weighted mass row, clamp, renormalize, then one re-solve restricted to the support.
  kResolve,
  /// Weighted mass row, clamp, renormalize.
  kProject,
};

/// Probability vector p on the nodes with Σ p Δ = 1 minimizing ‖(A − I) p‖₂, A as in nystrom_matrix.
/// Throws SolverError when nothing survives the clamp.
GridDensity nystrom_invariant(const Kernel& kernel, const NystromGrid& grid,
                              InvariantMethod method = InvariantMethod::kResolve, int threads = 1);

/// ‖A p − p‖₂ / ‖p‖₂.
double invariant_residual(const Eigen::MatrixXd& a, std::span<const double> p);

}  // namespace fredholm
