#pragma once

#include <stdexcept>
#include <string>

namespace fcolor {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (instance files, labels, probabilities).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A configured search/enumeration budget would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// No feasible solution exists (e.g. fewer colors than the b-fold chromatic number).
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Bitstream or side-information problems found while decoding.
class DecodeError : public Error {
 public:
  enum class Kind { kFraming, kModelInconsistency, kInvariantViolation, kUnknownCodeword };

  DecodeError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A ratio or rate that is mathematically undefined for the given input.
class Undefined : public Error {
 public:
  using Error::Error;
};

}  // namespace fcolor
