#pragma once

// End-to-end acceptance checks. Each check cross-validates an implementation
// route against an independent one (numeric vs closed form, analytic vs
// finite difference, three QFI formulas, measurement optimality) or checks a
// physical claim on the figure presets. Used by `thermoprobe selftest` and by
// the acceptance test binary.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace thermoprobe {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Measured quantity and threshold, human readable.
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct Criterion {
  int id;
  std::string name;
  /// Seconds; 0 means no limit.
  double time_limit;
  /// Returns pass/fail and fills the detail string.
  std::function<bool(std::string&)> check;
};

const std::vector<Criterion>& acceptance_criteria();

CriterionResult run_criterion(const Criterion& c);

/// Runs every criterion, printing one PASS/FAIL line each to `log` when given.
std::vector<CriterionResult> run_acceptance_suite(std::ostream* log = nullptr);

}  // namespace thermoprobe
