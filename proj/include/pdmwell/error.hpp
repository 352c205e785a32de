#pragma once

#include <stdexcept>
#include <string>

namespace pdmwell {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFamilyMember : public Error {
 public:
  using Error::Error;
};

/// The potential has a pole at the requested point (p < 0 members at the origin).
class SingularPoint : public Error {
 public:
  using Error::Error;
};

/// Effective potential does not confine the particle (e.g. (2,0) deeper than 3/4).
class NonConfining : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class DivergentLimit : public Error {
 public:
  using Error::Error;
};

class OutOfRadius : public Error {
 public:
  using Error::Error;
};

/// ODE continuation gave up; `last_point` is the last abscissa reached.
class ContinuationFailure : public Error {
 public:
  ContinuationFailure(const std::string& what, double last_point)
      : Error(what), last_point(last_point) {}
  double last_point;
};

class ComplexSpectrum : public Error {
 public:
  using Error::Error;
};

class NumericalOverflow : public Error {
 public:
  using Error::Error;
};

class SingularOrigin : public Error {
 public:
  using Error::Error;
};

class AnomalousOrdering : public Error {
 public:
  using Error::Error;
};

class QuantizationMisindex : public Error {
 public:
  using Error::Error;
};

}  // namespace pdmwell
