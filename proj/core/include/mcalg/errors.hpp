#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcalg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (term grammar, rational literals, ...).
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// A rational value outside [0,1] where a unit-interval value is required.
class RangeError : public Error {
public:
  using Error::Error;
};

/// Evaluation hit a variable the environment does not bind.
class UnboundVariableError : public Error {
public:
  explicit UnboundVariableError(std::size_t index)
      : Error("unbound variable x" + std::to_string(index)), index_(index) {}

  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

/// An element was handed to an algebra whose carrier it does not belong to.
class CarrierMismatchError : public Error {
public:
  using Error::Error;
};

/// Operation not available on this carrier or spec variant.
class NotSupportedError : public Error {
public:
  using Error::Error;
};

/// Enumeration or search exceeded its configured budget.
class BudgetExceededError : public Error {
public:
  using Error::Error;
};

/// Antisymmetry failed while loading a poset; names the offending cycle.
class CycleError : public Error {
public:
  CycleError(const std::string& a, const std::string& b)
      : Error("antisymmetry violation: cycle through '" + a + "' and '" + b + "'"),
        first_(a), second_(b) {}

  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

private:
  std::string first_, second_;
};

/// A map is not monotone on its declared domain.
class MonotonicityError : public Error {
public:
  using Error::Error;
};

/// Generators fail to order-separate two points.
class SeparationError : public Error {
public:
  SeparationError(const std::string& x, const std::string& y)
      : Error("no generator separates '" + x + "' from '" + y + "'"),
        x_(x), y_(y) {}

  const std::string& x() const { return x_; }
  const std::string& y() const { return y_; }

private:
  std::string x_, y_;
};

}  // namespace mcalg
