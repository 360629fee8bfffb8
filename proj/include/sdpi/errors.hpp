#pragma once

#include <stdexcept>
#include <string>

namespace sdpi {

// Bad user input: malformed files, wrong dimensions, inconsistent metadata.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Factoring ran past its work budget.
class Unfactorable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured cap (d, N, orbit count, oracle terms) would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical hypothesis of the requested operation does not hold.
class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace sdpi
