#pragma once

#include <stdexcept>
#include <string>

namespace certmenu {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An instance or menu failed a validator check.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A caller-visible precondition was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A numeric routine failed to converge; carries its best estimate.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double best_estimate)
      : Error(what), best_estimate(best_estimate) {}
  double best_estimate;
};

// Work or memory would exceed a configured cap.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, double required = 0.0)
      : Error(what), required(required) {}
  double required;
};

// Internal consistency check failed; indicates a bug or a violated
// modelling assumption (e.g. single-crossing does not actually hold).
class InternalError : public Error {
 public:
  using Error::Error;
};

// A computed market outcome failed equilibrium verification.
class EquilibriumError : public Error {
 public:
  using Error::Error;
};

}  // namespace certmenu
