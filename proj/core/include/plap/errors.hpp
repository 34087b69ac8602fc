#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Raised when an exponent constraint on (p, N, eps0) fails.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

/// Raised when p lies outside the range a bound is stated for.
class RangeError : public Error {
 public:
  using Error::Error;
};

class CylinderOutOfGrid : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

class BoundaryError : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Newton/fixed-point iteration did not reach the residual tolerance.
/// The time step must shrink.
class NonConvergence : public Error {
 public:
  NonConvergence(std::size_t time_index, double last_residual, int iterations)
      : Error("nonlinear solve did not converge at time index " + std::to_string(time_index) +
              " after " + std::to_string(iterations) +
              " iterations (last residual " + std::to_string(last_residual) + ")"),
        time_index_(time_index),
        last_residual_(last_residual),
        iterations_(iterations) {}

  [[nodiscard]] std::size_t time_index() const noexcept { return time_index_; }
  [[nodiscard]] double last_residual() const noexcept { return last_residual_; }
  [[nodiscard]] int iterations() const noexcept { return iterations_; }

 private:
  std::size_t time_index_;
  double last_residual_;
  int iterations_;
};

}  // namespace plap
