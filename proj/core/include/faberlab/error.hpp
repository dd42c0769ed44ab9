#pragma once

#include <stdexcept>
#include <string>

namespace faberlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or preconditions violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the domain of a map or formula (|w| < 1, t = theta, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// psi' requested at a corner preimage, where it vanishes or is undefined.
class CornerPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative or adaptive procedure failed to reach its target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace faberlab
