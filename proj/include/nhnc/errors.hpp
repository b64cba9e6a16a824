#pragma once

#include <stdexcept>
#include <string>

namespace nhnc {

// Base of every error raised by the library. The CLI maps the subclasses
// onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// theta*zeta/hbar^2 >= 1, hbar <= 0, or a Seiberg-Witten constraint violation.
class InvalidAlgebra : public Error {
 public:
  using Error::Error;
};

// A vanishing denominator in the Dyson-map constraint formulas.
class DegenerateAlgebra : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A closed-form spectrum quantity left its domain (|tanh 2r| >= 1 etc.).
class BranchFailure : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class UnsupportedSymbol : public Error {
 public:
  using Error::Error;
};

class NonHermitianSymbol : public Error {
 public:
  using Error::Error;
};

// A two-dimensional phase-space section is not closed under a map.
class SliceError : public Error {
 public:
  using Error::Error;
};

// Numerical domain problems in grid integrals (insufficient span, divergent
// integrand, incompatible grids).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace nhnc
