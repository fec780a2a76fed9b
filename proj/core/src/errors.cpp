#include "fredholm/errors.hpp"

namespace fredholm {

void SolverError::set_step(std::size_t step) {
  step_ = step;
  full_ = base_ + " (at step " + std::to_string(step) + ")";
}

VanishingDenominatorError::VanishingDenominatorError(std::size_t particle, double value)
    : SolverError("vanishing denominator for particle " + std::to_string(particle) + ": value " +
                  std::to_string(value) + "; consider eta > 0"),
      particle_(particle) {}

DivergenceError::DivergenceError(std::size_t particle, std::size_t coordinate)
    : SolverError("particle " + std::to_string(particle) + " coordinate " + std::to_string(coordinate) +
                  " became non-finite"),
      particle_(particle) {}

}  // namespace fredholm
