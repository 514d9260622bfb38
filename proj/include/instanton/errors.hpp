#pragma once

#include <stdexcept>
#include <string>

namespace instanton {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point (or a finite-difference stencil around it) left the model's chart.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMetricError : public Error {
 public:
  using Error::Error;
};

/// Jacobi-scaled condition number of the metric exceeded the configured bound.
class IllConditionedError : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class BranchError : public Error {
 public:
  using Error::Error;
};

/// Discriminant vanishes identically.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class UnclassifiableError : public Error {
 public:
  using Error::Error;
};

/// Open condition of a fiber family failed (e.g. a leading coefficient is zero).
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Weierstrass data with a point where a_p >= 4 and b_p >= 6.
class NotAllowableError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace instanton
