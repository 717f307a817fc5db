#pragma once

#include <stdexcept>
#include <string>

namespace ncaz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid scalar argument (p < 1, c <= 0, empty vectors, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Argument outside the range on which a bound is stated (e.g. lambda >= 3/M).
class RangeError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A function was evaluated outside its domain during functional calculus.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

// Input does not satisfy the hypotheses an operation requires.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncaz
