#pragma once

#include <stdexcept>
#include <string>

namespace dfield {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a face that an operation needs does not exist in the grid.
struct IncidenceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PathError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigurationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoSolutionError : std::runtime_error {
  NoSolutionError(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

}  // namespace dfield
