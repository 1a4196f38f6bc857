#pragma once

#include <stdexcept>
#include <string>

namespace gkfade {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gamma function evaluated at (or within 1e-12 of) a non-positive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// No vertical line separates the left and right pole families.
class NoStripError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach its tolerance within the allowed work.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A contour integral that must be real returned a non-negligible imaginary part.
class ResidualImagError : public Error {
 public:
  using Error::Error;
};

}  // namespace gkfade
