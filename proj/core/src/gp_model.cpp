#include "fredholm/gp_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fredholm/errors.hpp"
#include "fredholm/noise.hpp"

namespace fredholm {

GpModel::GpModel(std::vector<double> train_x, std::vector<double> train_z, double length_scale_sq,
                 double signal_var)
    : train_x_(std::move(train_x)),
      train_z_(std::move(train_z)),
      length_scale_sq_(length_scale_sq),
      signal_var_(signal_var) {
  if (train_x_.size() != train_z_.size()) throw PreconditionError("training inputs and targets differ in length");
  if (!(length_scale_sq > 0.0) || !(signal_var > 0.0)) {
    throw PreconditionError("GP hyperparameters must be positive");
  }
  const auto m = static_cast<Eigen::Index>(train_x_.size());
  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) gram(i, j) = covariance(train_x_[i], train_x_[j]);
    gram(i, i) += 1.0;
  }
  if (m > 0) {
    chol_.compute(gram);
    if (chol_.info() == Eigen::Success) weights_ = chol_.solve(Eigen::Map<const Eigen::VectorXd>(train_z_.data(), m));
    if (chol_.info() != Eigen::Success || !weights_.allFinite()) {
      throw FactorizationError("Cholesky of (C + I) failed");
    }
  }
}

double GpModel::covariance(double a, double b) const {
  const double d = a - b;
  return signal_var_ * std::exp(-0.5 * d * d / length_scale_sq_);
}

GpPredictive GpModel::predict(double y) const {
  GpPredictive out;
  out.var = signal_var_;
  const auto m = static_cast<Eigen::Index>(train_x_.size());
  if (m == 0) return out;

  Eigen::VectorXd c(m), dc(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    c(i) = covariance(y, train_x_[i]);
    dc(i) = -c(i) * (y - train_x_[i]) / length_scale_sq_;
  }
  out.mean = c.dot(weights_);
  out.dmean = dc.dot(weights_);
  const Eigen::VectorXd v = chol_.matrixL().solve(c);
  const Eigen::VectorXd dv = chol_.matrixL().solve(dc);
  out.var = signal_var_ - v.squaredNorm();
  out.dvar = -2.0 * dv.dot(v);
  return out;
}

std::shared_ptr<const GpModel> gp_fit(std::vector<double> train_x, std::vector<double> train_z,
                                      double length_scale_sq, double signal_var) {
  return std::make_shared<const GpModel>(std::move(train_x), std::move(train_z), length_scale_sq, signal_var);
}

GpPredictiveKernel::GpPredictiveKernel(std::shared_ptr<const GpModel> model, GradientMode mode)
    : model_(std::move(model)), mode_(mode) {
  if (!model_) throw PreconditionError("GP kernel needs a fitted model");
}

GpPredictive GpPredictiveKernel::predictive(double y) const {
  GpPredictive p = model_->predict(y);
  if (!(p.var > kVarianceFloor)) {
    clamps_.fetch_add(1, std::memory_order_relaxed);
    p.var = kVarianceFloor;
    p.dvar = 0.0;
  }
  return p;
}

double GpPredictiveKernel::density(double x, double y) const {
  const GpPredictive p = predictive(y);
  return normal_pdf(x, p.mean, p.var);
}

double GpPredictiveKernel::eval(ConstPoint x, ConstPoint y) const { return density(x[0], y[0]); }

void GpPredictiveKernel::grad1(ConstPoint x, ConstPoint y, MutPoint out) const {
  if (mode_ == GradientMode::kFiniteDifference) {
    const double h = kFiniteDifferenceStep;
    out[0] = (density(x[0] + h, y[0]) - density(x[0] - h, y[0])) / (2.0 * h);
    return;
  }
  const GpPredictive p = predictive(y[0]);
  const double r = x[0] - p.mean;
  out[0] = -normal_pdf(x[0], p.mean, p.var) * r / p.var;
}

void GpPredictiveKernel::grad2(ConstPoint x, ConstPoint y, MutPoint out) const {
  if (mode_ == GradientMode::kFiniteDifference) {
    const double h = kFiniteDifferenceStep;
    out[0] = (density(x[0], y[0] + h) - density(x[0], y[0] - h)) / (2.0 * h);
    return;
  }
  // d/dy log N(x; μ, σ²) = −σ²'/(2σ²) + (x − μ)μ'/σ² + (x − μ)²σ²'/(2σ⁴)
  const GpPredictive p = predictive(y[0]);
  const double r = x[0] - p.mean;
  const double k = normal_pdf(x[0], p.mean, p.var);
  const double dlog = -0.5 * p.dvar / p.var + r * p.dmean / p.var + 0.5 * r * r * p.dvar / (p.var * p.var);
  out[0] = k * dlog;
}

std::string GpPredictiveKernel::describe() const {
  std::ostringstream os;
  os << "gp-predictive(m=" << model_->size() << ",l2=" << model_->length_scale_sq()
     << ",sf2=" << model_->signal_var() << ")";
  return os.str();
}

double gp_ssm_transition(double x) { return 0.01 * x * x * x - 0.2 * x * x + 0.2 * x; }

TrainingData gp_ssm_training_data(std::size_t m, std::uint64_t seed) {
  const CounterRng rng(seed);
  TrainingData out;
  out.x.resize(m);
  out.z.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.x[i] = -5.0 + 10.0 * rng.uniform(CounterRng::Domain::kTrainingData, 0, i, 0);
    out.z[i] = gp_ssm_transition(out.x[i]) + 5.0 * rng.normal(CounterRng::Domain::kTrainingData, 1, i, 0);
  }
  return out;
}

FredholmProblem gp_ssm_problem(std::shared_ptr<const GpModel> model, GradientMode mode) {
  FredholmProblem p;
  p.kernel = std::make_shared<GpPredictiveKernel>(std::move(model), mode);
  p.forcing = std::make_shared<ZeroForcing>();
  p.lambda = 1.0;
  p.dim = 1;
  return p;
}

}  // namespace fredholm
