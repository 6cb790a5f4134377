#pragma once

#include <stdexcept>
#include <string>

namespace bqmaxwell {

// Invalid configuration: bad grid sizes, empty masks, nonpositive material
// constants, sources outside the padded sub-box.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Field in the wrong representation (physical vs spectral).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Too few samples for the requested stencil.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A checked precondition failed; carries the measured value.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, double measured)
      : std::runtime_error(what), measured_(measured) {}

  double measured() const noexcept { return measured_; }

 private:
  double measured_;
};

}  // namespace bqmaxwell
