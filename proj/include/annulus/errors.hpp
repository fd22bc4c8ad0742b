#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace annulus {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an input parameter was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series or iteration failed to reach its tolerance within the hard cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A result over- or underflowed the double range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Mismatched or unsupported jet orders.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Composition with log/sqrt/reciprocal of a jet whose value vanishes.
class SingularJetError : public Error {
 public:
  using Error::Error;
};

/// Identities that hold mathematically were violated numerically.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point inside the exclusion disc around a lattice point.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, std::complex<double> lattice_point)
      : DomainError(what), lattice_point_(lattice_point) {}

  std::complex<double> lattice_point() const { return lattice_point_; }

 private:
  std::complex<double> lattice_point_;
};

}  // namespace annulus
