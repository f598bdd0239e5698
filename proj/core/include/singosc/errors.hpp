#pragma once

#include <stdexcept>
#include <string>

namespace singosc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an input value was violated (c <= -1/8, k0 <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// g_minus reached zero; the invariant cannot be written in canonical form.
class SingularInvariantError : public Error {
 public:
  SingularInvariantError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

// Disentangling coordinates blew up (zero of x(t) in the L-basis).
class CoordinateSingularityError : public Error {
 public:
  CoordinateSingularityError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

// omega^2 = omega0^2 makes the linearized K-basis Riccati equation degenerate.
class DegenerateCoefficientError : public Error {
 public:
  DegenerateCoefficientError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

// Classical trajectory hit the origin.
class CollisionError : public Error {
 public:
  CollisionError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class IntegratorError : public Error {
 public:
  using Error::Error;
};

}  // namespace singosc
