#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "fredholm/problems.hpp"

namespace fredholm {

/// One-step GP predictive at a query point y, with derivatives in y.
struct GpPredictive {
  double mean = 0.0;
  double var = 0.0;
  double dmean = 0.0;
  double dvar = 0.0;
};

/// Squared-exponential GP regression with unit observation noise:
/// c(x, x') = σ_f² exp(−(x − x')² / (2ℓ²)), observations z = f(x) + noise, (C + I) factored once.
class GpModel {
 public:
  GpModel(std::vector<double> train_x, std::vector<double> train_z, double length_scale_sq, double signal_var);

  std::size_t size() const { return train_x_.size(); }
  const std::vector<double>& train_x() const { return train_x_; }
  const std::vector<double>& train_z() const { return train_z_; }
  double length_scale_sq() const { return length_scale_sq_; }
  double signal_var() const { return signal_var_; }

  double covariance(double a, double b) const;

  /// μ(y, D_m), σ²(y, D_m) before any clamping, plus their y-derivatives.
  GpPredictive predict(double y) const;

 private:
  std::vector<double> train_x_;
  std::vector<double> train_z_;
  double length_scale_sq_;
  double signal_var_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::VectorXd weights_;  // (C + I)^{-1} z
};

/// Throws FactorizationError when C + I is numerically not positive definite.
std::shared_ptr<const GpModel> gp_fit(std::vector<double> train_x, std::vector<double> train_z,
                                      double length_scale_sq, double signal_var);

enum class GradientMode { kAnalytic, kFiniteDifference };

/// k(x, y) = N(x; μ(y, D_m), σ²(y, D_m)); one-dimensional.
class GpPredictiveKernel final : public Kernel {
 public:
  static constexpr double kVarianceFloor = 1e-12;
  static constexpr double kFiniteDifferenceStep = 1e-5;

  explicit GpPredictiveKernel(std::shared_ptr<const GpModel> model, GradientMode mode = GradientMode::kAnalytic);

  double eval(ConstPoint x, ConstPoint y) const override;
  void grad1(ConstPoint x, ConstPoint y, MutPoint out) const override;
  void grad2(ConstPoint x, ConstPoint y, MutPoint out) const override;
  std::string describe() const override;

  /// Predictive with σ² floored at kVarianceFloor (counted in clamp_count()).
  GpPredictive predictive(double y) const;
  std::size_t clamp_count() const { return clamps_.load(std::memory_order_relaxed); }
  const GpModel& model() const { return *model_; }

 private:
  double density(double x, double y) const;

  std::shared_ptr<const GpModel> model_;
  GradientMode mode_;
  mutable std::atomic<std::size_t> clamps_{0};
};

/// f(x) = 0.01x³ − 0.2x² + 0.2x.
double gp_ssm_transition(double x);

struct TrainingData {
  std::vector<double> x;
  std::vector<double> z;
};

/// x_i ~ U[−5, 5], z_i = f(x_i) + ε_i with ε_i ~ N(0, 5²), all drawn from `seed`.
TrainingData gp_ssm_training_data(std::size_t m, std::uint64_t seed);

/// Fixed-point problem (φ ≡ 0, λ = 1) for the GP-SSM predictive kernel.
FredholmProblem gp_ssm_problem(std::shared_ptr<const GpModel> model, GradientMode mode = GradientMode::kAnalytic);

}  // namespace fredholm
