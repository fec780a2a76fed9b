#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fredholm {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Failures of the particle solver; carry the step index once known.
class SolverError : public Error {
 public:
  explicit SolverError(std::string what) : Error(what), base_(std::move(what)) {}

  const char* what() const noexcept override { return full_.empty() ? base_.c_str() : full_.c_str(); }

  std::optional<std::size_t> step() const { return step_; }
  void set_step(std::size_t step);

 private:
  std::string base_;
  std::string full_;
  std::optional<std::size_t> step_;
};

/// λ·π^N[k(X^j,·)] + φ(X^j) + η is not strictly positive for some particle.
class VanishingDenominatorError : public SolverError {
 public:
  VanishingDenominatorError(std::size_t particle, double value);
  std::size_t particle() const { return particle_; }

 private:
  std::size_t particle_;
};

/// A particle coordinate became NaN or infinite.
class DivergenceError : public SolverError {
 public:
  DivergenceError(std::size_t particle, std::size_t coordinate);
  std::size_t particle() const { return particle_; }

 private:
  std::size_t particle_;
};

/// Cholesky factorization of a covariance matrix failed.
class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(std::string what, double residual) : Error(std::move(what)), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Two grid densities do not share the same grid.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// The estimated density has mass where the right-hand side vanishes.
class SupportMismatchError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable input file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fredholm
