#pragma once

// Self-check of every module's invariants at small, exhaustive scale.

#include <functional>
#include <string>

namespace curvelab {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs every check in a fixed order, reporting each as it finishes.
// Returns the number of failed checks.
int run_verification(const std::function<void(const CheckOutcome&)>& report);

}  // namespace curvelab
