#pragma once

// Built-in invariant suite: structural checks on every model, equilibrium
// fixed points, steady-state energy balance, and agreement between the
// stationary solver and long-time RK4 evolution.

#include <functional>
#include <string>
#include <vector>

#include "qfridge/dynamics.hpp"

namespace qfridge {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const;
  std::size_t failures() const;
};

struct ValidationOptions {
  /// Every threshold becomes max(default, tol); 0 keeps the defaults.
  double tol = 0.0;
  /// Include the RK4 oracle comparison (the slowest checks).
  bool include_dynamics = true;
  /// Generator used by the stationary solver. Swappable so fault-injection
  /// tests can check that the suite notices a broken generator.
  std::function<Liouvillian(const FridgeModel&)> liouvillian_builder = build_liouvillian;
};

ValidationReport run_validation(const ValidationOptions& options = {});

/// Generator with the commutator replaced by an anticommutator; only for
/// fault-injection tests of the validation suite.
Liouvillian build_liouvillian_with_commutator_sign_fault(const FridgeModel& model);

}  // namespace qfridge
