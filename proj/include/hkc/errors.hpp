#pragma once

#include <stdexcept>
#include <string>

namespace hkc {

// Base for every error raised by the library. The CLI maps subclasses to exit
// codes, so new error kinds should derive from one of the two categories.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: the caller asked for something the model does not define.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// Valid input, but the physics does not admit the request.
class PhysicsError : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class NotAZeroPair : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class NoZeroModes : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

class NotNormalized : public InvalidSpec {
 public:
  using InvalidSpec::InvalidSpec;
};

class TooLarge : public InvalidSpec {
 public:
  using InvalidSpec::InvalidSpec;
};

class MismatchBeyondTol : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

// A conservation law failed during a dynamics run.
class InvariantViolation : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

}  // namespace hkc
