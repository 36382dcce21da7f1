#pragma once

#include <stdexcept>
#include <string>

namespace curvelab {

// Bad input shape: unparsable words, unknown presets, out-of-range parameters.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mathematically meaningful refusal: peripheral words, equal classes,
// disconnected spines, non-simple cores.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace curvelab
