#pragma once

// The acceptance matrix: eleven exact checks with wall-clock budgets.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pcforge {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 20190621;
  unsigned jobs = 0;
  /// Criteria to run (1..11); empty runs all.
  std::vector<int> only;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const SuiteOptions& options);
std::vector<CriterionResult> run_acceptance(const SuiteOptions& options);

/// "PASS C<id> <name> (<seconds> s / <budget> s): <detail>".
std::string format_result(const CriterionResult& r);

}  // namespace pcforge
