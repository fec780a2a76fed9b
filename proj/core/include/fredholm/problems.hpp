#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "fredholm/grid.hpp"

namespace fredholm {

using ConstPoint = std::span<const double>;
using MutPoint = std::span<double>;

/// Nonnegative integral kernel k(x, y) on R^d x R^d with both partial gradients.
class Kernel {
 public:
  virtual ~Kernel() = default;

  virtual double eval(ConstPoint x, ConstPoint y) const = 0;
  /// ∇ₓ k(x, y)
  virtual void grad1(ConstPoint x, ConstPoint y, MutPoint out) const = 0;
  /// ∇ᵧ k(x, y)
  virtual void grad2(ConstPoint x, ConstPoint y, MutPoint out) const = 0;

  virtual std::string describe() const = 0;
};

/// Forcing term φ ≥ 0 and its gradient.
class Forcing {
 public:
  virtual ~Forcing() = default;
  virtual double eval(ConstPoint x) const = 0;
  virtual void grad(ConstPoint x, MutPoint out) const = 0;
  virtual std::string describe() const = 0;
};

/// Reference measure π₀ ∝ exp(−U), represented through ∇U.
class ReferenceMeasure {
 public:
  virtual ~ReferenceMeasure() = default;
  virtual void grad_potential(ConstPoint x, MutPoint out) const = 0;
  /// Normalized Lebesgue density; NaN when π₀ is improper.
  virtual double density(ConstPoint x) const = 0;
  virtual std::string describe() const = 0;
};

struct FredholmProblem {
  std::shared_ptr<const Kernel> kernel;
  std::shared_ptr<const Forcing> forcing;
  double lambda = 1.0;
  int dim = 1;

  void validate() const;
};

struct Regularization {
  double alpha = 0.0;
  double eta = 0.0;
  /// May be null only when alpha == 0.
  std::shared_ptr<const ReferenceMeasure> reference;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Kernels

/// k(x, y) = N(x; e^{−β} y, (1 − e^{−2β}) I): the Ornstein-Uhlenbeck transition
/// density from y to x, whose stationary law is N(0, I).
class GaussianToyKernel final : public Kernel {
 public:
  explicit GaussianToyKernel(double beta);

  double eval(ConstPoint x, ConstPoint y) const override;
  void grad1(ConstPoint x, ConstPoint y, MutPoint out) const override;
  void grad2(ConstPoint x, ConstPoint y, MutPoint out) const override;
  std::string describe() const override;

  double beta() const { return beta_; }
  double decay() const { return decay_; }
  double variance() const { return variance_; }

 private:
  double beta_;
  double decay_;
  double variance_;
  double norm1_;  // 1-D normalizer (2π·variance)^{-1/2}
};

/// k(x, y) = exp(−‖y − x‖). Gradients use the one-sided derivative and vanish at y = x.
class ExponentialKernel final : public Kernel {
 public:
  double eval(ConstPoint x, ConstPoint y) const override;
  void grad1(ConstPoint x, ConstPoint y, MutPoint out) const override;
  void grad2(ConstPoint x, ConstPoint y, MutPoint out) const override;
  std::string describe() const override { return "exponential"; }
};

/// k(x, y) = exp(−‖y − x‖²).
class SquaredExponentialKernel final : public Kernel {
 public:
  double eval(ConstPoint x, ConstPoint y) const override;
  void grad1(ConstPoint x, ConstPoint y, MutPoint out) const override;
  void grad2(ConstPoint x, ConstPoint y, MutPoint out) const override;
  std::string describe() const override { return "squared-exponential"; }
};

class ConstantKernel final : public Kernel {
 public:
  explicit ConstantKernel(double value);
  double eval(ConstPoint, ConstPoint) const override { return value_; }
  void grad1(ConstPoint, ConstPoint, MutPoint out) const override;
  void grad2(ConstPoint, ConstPoint, MutPoint out) const override;
  std::string describe() const override;

 private:
  double value_;
};

// ---------------------------------------------------------------------------
// Forcings

/// φ(x) = scale · N(x; mean·1, var·I).
class GaussianForcing final : public Forcing {
 public:
  GaussianForcing(double scale, double mean, double var);
  double eval(ConstPoint x) const override;
  void grad(ConstPoint x, MutPoint out) const override;
  std::string describe() const override;

 private:
  double scale_, mean_, var_;
};

class ConstantForcing final : public Forcing {
 public:
  explicit ConstantForcing(double value);
  double eval(ConstPoint) const override { return value_; }
  void grad(ConstPoint, MutPoint out) const override;
  std::string describe() const override;

 private:
  double value_;
};

class ZeroForcing final : public Forcing {
 public:
  double eval(ConstPoint) const override { return 0.0; }
  void grad(ConstPoint, MutPoint out) const override;
  std::string describe() const override { return "zero"; }
};

// ---------------------------------------------------------------------------
// Reference measures

/// π₀ = N(mean·1, var·I); ∇U(x) = (x − mean) / var.
class GaussianReference final : public ReferenceMeasure {
 public:
  GaussianReference(double mean, double var);
  void grad_potential(ConstPoint x, MutPoint out) const override;
  double density(ConstPoint x) const override;
  std::string describe() const override;

  double mean() const { return mean_; }
  double var() const { return var_; }

 private:
  double mean_, var_;
};

/// Improper flat reference (∇U ≡ 0): the entropic-penalty variant of the flow.
class FlatReference final : public ReferenceMeasure {
 public:
  void grad_potential(ConstPoint, MutPoint out) const override;
  double density(ConstPoint) const override;
  std::string describe() const override { return "improper"; }
};

// ---------------------------------------------------------------------------
// Problem factories and analytic references

double normal_pdf(double x, double mean, double var);

/// φ(x) = (1 − λ) N(x; 0, I), k = GaussianToyKernel(β). Exact solution N(0, I).
FredholmProblem gaussian_toy_problem(double lambda, double beta, int dim = 1);

/// Root of 1 − ω tan ω in (0, π/2) by bisection to bracket width `tol`.
double solve_omega_root(double tol = 1e-14);

/// Homogeneous problem for exp(−|y − x|) on [−1, 1] with its analytic dominant eigenpair.
struct ExponentialEigenProblem {
  /// λ_alg = 1/μ and φ ≡ 0.
  FredholmProblem problem;
  double omega = 0.0;
  /// Operator eigenvalue μ = 2 / (1 + ω²).
  double eigenvalue = 0.0;

  /// cos(ω x) / sqrt(1 + sin(2ω)/(2ω)) on [−1, 1], zero outside.
  double eigenfunction(double x) const;
  /// Eigenfunction tabulated on `grid` and rescaled to unit trapezoid mass.
  GridDensity reference_density(const GridSpec& grid) const;
};

ExponentialEigenProblem exponential_kernel_problem();

/// Central-difference gradient of a scalar field (test and fallback utility).
void finite_difference_gradient(const std::function<double(ConstPoint)>& f, ConstPoint x, double h, MutPoint out);

}  // namespace fredholm
