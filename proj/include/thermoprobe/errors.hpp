#pragma once

#include <stdexcept>
#include <string>

namespace thermoprobe {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input failed a precondition (bad parameter, bad shape, bad file).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine did not reach its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SizeOverflow : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonPositiveTemperature : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Closed-form routes only hold at n_g1 = n_g2 = 1/2.
class NotSymmetricPoint : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidDensityMatrix : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LengthMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SingularOutcome : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainEdge : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownPreset : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace thermoprobe
