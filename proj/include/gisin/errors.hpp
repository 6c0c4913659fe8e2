#pragma once

#include <stdexcept>
#include <string>

namespace gisin {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or subsystem dimensions do not fit together.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Input violates a documented invariant (norm, trace, Hermiticity, parameter range).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// The local generators annihilate the state; the projection carries no weight.
class DegenerateProjection : public Error {
public:
  using Error::Error;
};

class BudgetExceeded : public Error {
public:
  using Error::Error;
};

class ConvergenceError : public Error {
public:
  using Error::Error;
};

} // namespace gisin
