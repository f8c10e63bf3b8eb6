#pragma once

#include <stdexcept>
#include <string>

namespace gdicke {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An iterative solver did not converge, or a converged result failed its residual check.
class NumericFailure : public Error {
 public:
  NumericFailure(const std::string& what, int iterations)
      : Error(what), iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

/// An eigenvalue of eta*M had no partner -mu within tolerance.
class PairingFailure : public Error {
 public:
  using Error::Error;
};

/// A zero-frequency mode has vanishing eta-norm, so T cannot be normalized.
class ZeroModeUnnormalizable : public Error {
 public:
  using Error::Error;
};

class UnstableForm : public Error {
 public:
  using Error::Error;
};

/// Ground energy requested for a spectrum with complex or negative frequencies.
class UnphysicalPhase : public Error {
 public:
  using Error::Error;
};

/// Super-radiant displacements do not exist (coupling below threshold).
class DisplacementUndefined : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// A bisection bracket does not straddle a change of the predicate.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Requested Hilbert space exceeds the configured dimension cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace gdicke
