#include "fredholm/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "fredholm/errors.hpp"

namespace fredholm {
namespace {

double squared_distance(ConstPoint a, ConstPoint b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void fill(MutPoint out, double v) { std::fill(out.begin(), out.end(), v); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void FredholmProblem::validate() const {
  if (!kernel) throw PreconditionError("problem has no kernel");
  if (!forcing) throw PreconditionError("problem has no forcing");
  if (dim < 1) throw PreconditionError("problem dimension must be >= 1");
  if (!std::isfinite(lambda)) throw PreconditionError("lambda must be finite");
}

void Regularization::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw PreconditionError("alpha must be >= 0");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw PreconditionError("eta must be >= 0");
  if (alpha > 0.0 && !reference) throw PreconditionError("alpha > 0 requires a reference measure");
}

double normal_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

// --- GaussianToyKernel ------------------------------------------------------

GaussianToyKernel::GaussianToyKernel(double beta)
    : beta_(beta),
      decay_(std::exp(-beta)),
      variance_(-std::expm1(-2.0 * beta)),
      norm1_(1.0 / std::sqrt(2.0 * std::numbers::pi * variance_)) {
  if (!(beta > 0.0)) throw PreconditionError("beta must be > 0");
}

double GaussianToyKernel::eval(ConstPoint x, ConstPoint y) const {
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = x[i] - decay_ * y[i];
    r2 += r * r;
  }
  const double norm = x.size() == 1 ? norm1_ : std::pow(norm1_, static_cast<double>(x.size()));
  return std::exp(-0.5 * r2 / variance_) * norm;
}

void GaussianToyKernel::grad1(ConstPoint x, ConstPoint y, MutPoint out) const {
  const double k = eval(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = -k * (x[i] - decay_ * y[i]) / variance_;
}

void GaussianToyKernel::grad2(ConstPoint x, ConstPoint y, MutPoint out) const {
  const double k = eval(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = k * decay_ * (x[i] - decay_ * y[i]) / variance_;
}

std::string GaussianToyKernel::describe() const { return "gaussian-toy(beta=" + fmt(beta_) + ")"; }

// --- ExponentialKernel ------------------------------------------------------

double ExponentialKernel::eval(ConstPoint x, ConstPoint y) const {
  return std::exp(-std::sqrt(squared_distance(x, y)));
}

void ExponentialKernel::grad1(ConstPoint x, ConstPoint y, MutPoint out) const {
  const double dist = std::sqrt(squared_distance(x, y));
  if (dist == 0.0) {
    fill(out, 0.0);
    return;
  }
  const double scale = std::exp(-dist) / dist;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = scale * (y[i] - x[i]);
}

void ExponentialKernel::grad2(ConstPoint x, ConstPoint y, MutPoint out) const {
  grad1(x, y, out);
  for (double& v : out) v = -v;
}

// --- SquaredExponentialKernel -----------------------------------------------

double SquaredExponentialKernel::eval(ConstPoint x, ConstPoint y) const {
  return std::exp(-squared_distance(x, y));
}

void SquaredExponentialKernel::grad1(ConstPoint x, ConstPoint y, MutPoint out) const {
  const double k = eval(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = 2.0 * k * (y[i] - x[i]);
}

void SquaredExponentialKernel::grad2(ConstPoint x, ConstPoint y, MutPoint out) const {
  const double k = eval(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = -2.0 * k * (y[i] - x[i]);
}

// --- ConstantKernel ---------------------------------------------------------

ConstantKernel::ConstantKernel(double value) : value_(value) {
  if (!(value >= 0.0)) throw PreconditionError("kernel must be nonnegative");
}
void ConstantKernel::grad1(ConstPoint, ConstPoint, MutPoint out) const { fill(out, 0.0); }
void ConstantKernel::grad2(ConstPoint, ConstPoint, MutPoint out) const { fill(out, 0.0); }
std::string ConstantKernel::describe() const { return "constant(" + fmt(value_) + ")"; }

// --- Forcings ---------------------------------------------------------------

GaussianForcing::GaussianForcing(double scale, double mean, double var) : scale_(scale), mean_(mean), var_(var) {
  if (!(scale >= 0.0)) throw PreconditionError("forcing scale must be >= 0");
  if (!(var > 0.0)) throw PreconditionError("forcing variance must be > 0");
}

double GaussianForcing::eval(ConstPoint x) const {
  double r2 = 0.0;
  for (double xi : x) r2 += (xi - mean_) * (xi - mean_);
  const double d = static_cast<double>(x.size());
  return scale_ * std::exp(-0.5 * r2 / var_) * std::pow(2.0 * std::numbers::pi * var_, -0.5 * d);
}

void GaussianForcing::grad(ConstPoint x, MutPoint out) const {
  const double v = eval(x);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = -v * (x[i] - mean_) / var_;
}

std::string GaussianForcing::describe() const {
  return fmt(scale_) + "*N(" + fmt(mean_) + "," + fmt(var_) + ")";
}

ConstantForcing::ConstantForcing(double value) : value_(value) {
  if (!(value >= 0.0)) throw PreconditionError("forcing must be nonnegative");
}
void ConstantForcing::grad(ConstPoint, MutPoint out) const { fill(out, 0.0); }
std::string ConstantForcing::describe() const { return "constant(" + fmt(value_) + ")"; }

void ZeroForcing::grad(ConstPoint, MutPoint out) const { fill(out, 0.0); }

// --- Reference measures -----------------------------------------------------

GaussianReference::GaussianReference(double mean, double var) : mean_(mean), var_(var) {
  if (!(var > 0.0)) throw PreconditionError("reference variance must be > 0");
}

void GaussianReference::grad_potential(ConstPoint x, MutPoint out) const {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean_) / var_;
}

double GaussianReference::density(ConstPoint x) const {
  double r2 = 0.0;
  for (double xi : x) r2 += (xi - mean_) * (xi - mean_);
  const double d = static_cast<double>(x.size());
  return std::exp(-0.5 * r2 / var_) * std::pow(2.0 * std::numbers::pi * var_, -0.5 * d);
}

std::string GaussianReference::describe() const { return "N(" + fmt(mean_) + "," + fmt(var_) + ")"; }

void FlatReference::grad_potential(ConstPoint, MutPoint out) const { fill(out, 0.0); }
double FlatReference::density(ConstPoint) const { return std::numeric_limits<double>::quiet_NaN(); }

// --- Factories --------------------------------------------------------------

FredholmProblem gaussian_toy_problem(double lambda, double beta, int dim) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw PreconditionError("gaussian toy requires 0 < lambda < 1");
  if (!(beta > 0.0)) throw PreconditionError("gaussian toy requires beta > 0");
  if (dim < 1) throw PreconditionError("dimension must be >= 1");
  FredholmProblem p;
  p.kernel = std::make_shared<GaussianToyKernel>(beta);
  p.forcing = std::make_shared<GaussianForcing>(1.0 - lambda, 0.0, 1.0);
  p.lambda = lambda;
  p.dim = dim;
  return p;
}

double solve_omega_root(double tol) {
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be > 0");
  const auto f = [](double w) { return 1.0 - w * std::tan(w); };
  double lo = 1e-9;
  double hi = 0.5 * std::numbers::pi - 1e-9;
  // f(lo) > 0 > f(hi) and f is strictly decreasing on the bracket.
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ExponentialEigenProblem::eigenfunction(double x) const {
  if (x < -1.0 || x > 1.0) return 0.0;
  return std::cos(omega * x) / std::sqrt(1.0 + std::sin(2.0 * omega) / (2.0 * omega));
}

GridDensity ExponentialEigenProblem::reference_density(const GridSpec& grid) const {
  return renormalized(tabulate(grid, [this](double x) { return eigenfunction(x); }));
}

ExponentialEigenProblem exponential_kernel_problem() {
  ExponentialEigenProblem out;
  out.omega = solve_omega_root();
  out.eigenvalue = 2.0 / (1.0 + out.omega * out.omega);
  out.problem.kernel = std::make_shared<ExponentialKernel>();
  out.problem.forcing = std::make_shared<ZeroForcing>();
  out.problem.lambda = 1.0 / out.eigenvalue;
  out.problem.dim = 1;
  return out;
}

void finite_difference_gradient(const std::function<double(ConstPoint)>& f, ConstPoint x, double h, MutPoint out) {
  std::vector<double> probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f(probe);
    probe[i] = x[i] - h;
    const double down = f(probe);
    probe[i] = x[i];
    out[i] = (up - down) / (2.0 * h);
  }
}

}  // namespace fredholm
