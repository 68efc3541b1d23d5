#pragma once

// The acceptance checks shared by the `verify` command and the acceptance
// test binary. Each check is deterministic (fixed seeds).

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "tvgp/triplet_model.hpp"

namespace tvgp::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Hooks {
  /// Closed-form qutrit phase under test; replaceable for mutation checks.
  std::function<double(const TripletParams&)> analytic_total = analytic_total_phase;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const Hooks& hooks = {});
std::vector<CriterionResult> run_all(const Hooks& hooks = {});

/// "[PASS] 3 steepening: ..." (no timing, so reports are reproducible).
std::string format_line(const CriterionResult& r);

}  // namespace tvgp::acceptance
