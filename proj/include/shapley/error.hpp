#pragma once

#include <stdexcept>
#include <string>

namespace shapley {

// Unknown vertex, malformed profile, index out of range.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConnectivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact solver or enumeration would exceed its configured limits.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The inputs of a certificate do not satisfy what the bound argument assumes
// (OPT not optimal, NASH not an equilibrium, multi-sink instance).
class PremiseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Signals a bug: a state the theory says cannot happen.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace shapley
