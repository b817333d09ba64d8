#pragma once

#include <string>
#include <vector>

namespace rgather {

/// Outcome of one desk-suite criterion run by the bench harness.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // counts, worst ratios, failing seeds
  double wall_ms = 0.0;
};

/// Runs one of the eight desk-scale verification criteria (1-based).
CriterionResult run_criterion(int id);

/// All criteria in order; prints one pass/fail line per criterion to
/// stdout as it goes when `verbose` is set.
std::vector<CriterionResult> run_desk_suite(bool verbose);

}  // namespace rgather
