#include "fredholm/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "fredholm/errors.hpp"
#include "fredholm/parallel.hpp"

namespace fredholm {
namespace {

constexpr std::size_t kDenseLimit = 600;
constexpr double kMassRowWeight = 1e6;

double sup_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& v, double mu) {
  return (a * v - mu * v).lpNorm<Eigen::Infinity>() / v.lpNorm<Eigen::Infinity>();
}

EigenSolution finish(const NystromGrid& grid, const Eigen::MatrixXd& a, double mu, Eigen::VectorXd v) {
  std::size_t centre = 0;
  for (std::size_t i = 1; i < grid.n; ++i) {
    if (std::abs(grid.node(i)) < std::abs(grid.node(centre))) centre = i;
  }
  if (v(static_cast<Eigen::Index>(centre)) < 0.0) v = -v;
  const double mass = std::abs(v.sum() * grid.weight());
  if (!(mass > 0.0)) throw SolverError("dominant eigenvector has zero mass");
  v /= mass;

  EigenSolution out;
  out.grid = grid;
  out.eigenvalue = mu;
  out.residual = sup_residual(a, v, mu);
  out.values.assign(v.data(), v.data() + v.size());
  return out;
}

EigenSolution dense_eig(const NystromGrid& grid, const Eigen::MatrixXd& a) {
  Eigen::Index best = 0;
  Eigen::VectorXd v;
  double mu = 0.0;
  if (a.isApprox(a.transpose(), 1e-14)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) throw SolverError("symmetric eigensolver failed");
    best = a.rows() - 1;  // ascending order
    mu = solver.eigenvalues()(best);
    v = solver.eigenvectors().col(best);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) throw SolverError("eigensolver failed");
    const auto& values = solver.eigenvalues();
    for (Eigen::Index i = 1; i < values.size(); ++i) {
      if (values(i).real() > values(best).real()) best = i;
    }
    mu = values(best).real();
    v = solver.eigenvectors().col(best).real();
  }
  return finish(grid, a, mu, std::move(v));
}

EigenSolution power_eig(const NystromGrid& grid, const Eigen::MatrixXd& a, const PowerOptions& opt) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double mu = 0.0;
  double residual = 0.0;
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    Eigen::VectorXd w = a * v + opt.shift * v;
    const double norm = w.norm();
    if (!(norm > 0.0)) throw SolverError("power iteration collapsed to zero");
    v = w / norm;
    const Eigen::VectorXd av = a * v;
    mu = v.dot(av);
    residual = (av - mu * v).lpNorm<Eigen::Infinity>() / v.lpNorm<Eigen::Infinity>();
    if (residual <= opt.tol) return finish(grid, a, mu, std::move(v));
  }
  throw ConvergenceError("power iteration did not converge (residual " + std::to_string(residual) + ")", residual);
}

Eigen::VectorXd clamp_and_normalize(Eigen::VectorXd p, double weight) {
  p = p.cwiseMax(0.0);
  const double mass = p.sum() * weight;
  if (!(mass > 0.0)) throw SolverError("invariant density vanished after clamping");
  return p / mass;
}

}  // namespace

std::vector<double> NystromGrid::nodes() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = node(i);
  return out;
}

GridSpec NystromGrid::as_grid() const { return {node(0), node(n - 1), n}; }

void NystromGrid::validate() const {
  if (n < 2) throw PreconditionError("Nystrom grid needs n >= 2");
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) throw PreconditionError("Nystrom interval needs a < b");
}

Eigen::MatrixXd nystrom_matrix(const Kernel& kernel, const NystromGrid& grid, int threads) {
  grid.validate();
  const auto n = static_cast<Eigen::Index>(grid.n);
  const double w = grid.weight();
  const std::vector<double> x = grid.nodes();
  Eigen::MatrixXd a(n, n);
  parallel_for(grid.n, threads, [&](std::size_t j) {
    const double y[1] = {x[j]};
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double xi[1] = {x[i]};
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kernel.eval(xi, y) * w;
    }
  });
  return a;
}

EigenSolution nystrom_eig(const Kernel& kernel, const NystromGrid& grid, EigenMethod method,
                          const PowerOptions& power) {
  const Eigen::MatrixXd a = nystrom_matrix(kernel, grid);
  if (method == EigenMethod::kAuto) method = grid.n <= kDenseLimit ? EigenMethod::kDense : EigenMethod::kPower;
  return method == EigenMethod::kDense ? dense_eig(grid, a) : power_eig(grid, a, power);
}

GridDensity nystrom_invariant(const Kernel& kernel, const NystromGrid& grid, InvariantMethod method, int threads) {
  const Eigen::MatrixXd a = nystrom_matrix(kernel, grid, threads);
  const Eigen::Index n = a.rows();
  const double w = grid.weight();

  Eigen::MatrixXd system(n + 1, n);
  system.topRows(n) = a - Eigen::MatrixXd::Identity(n, n);
  system.row(n).setConstant(kMassRowWeight * w);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = kMassRowWeight;

  Eigen::VectorXd p = clamp_and_normalize(system.colPivHouseholderQr().solve(rhs), w);

  if (method == InvariantMethod::kResolve) {
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (p(i) > 0.0) support.push_back(i);
    }
    Eigen::MatrixXd reduced(n + 1, static_cast<Eigen::Index>(support.size()));
    for (std::size_t c = 0; c < support.size(); ++c) reduced.col(static_cast<Eigen::Index>(c)) = system.col(support[c]);
    const Eigen::VectorXd q = reduced.colPivHouseholderQr().solve(rhs);
    p.setZero();
    for (std::size_t c = 0; c < support.size(); ++c) p(support[c]) = q(static_cast<Eigen::Index>(c));
    p = clamp_and_normalize(std::move(p), w);
  }

  return {grid.as_grid(), std::vector<double>(p.data(), p.data() + n), 0};
}

double invariant_residual(const Eigen::MatrixXd& a, std::span<const double> p) {
  if (static_cast<Eigen::Index>(p.size()) != a.cols()) throw PreconditionError("vector size does not match matrix");
  const Eigen::Map<const Eigen::VectorXd> v(p.data(), static_cast<Eigen::Index>(p.size()));
  return (a * v - v).norm() / v.norm();
}

}  // namespace fredholm
