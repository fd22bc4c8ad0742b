#pragma once

#include <functional>
#include <string>
#include <vector>

namespace annulus {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  bool quick = false;    // reduced point counts and grids
  unsigned threads = 0;  // sweep workers, 0 = hardware concurrency
};

inline constexpr int kCriterionCount = 11;

/// Runs one criterion (1..10). Criterion 11 is the run-time budget of the
/// whole suite and is produced by run_acceptance.
CriterionResult run_criterion(int id, const AcceptanceOptions& opt);

/// Runs criteria 1..11 in order, reporting each result as it completes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& opt, const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS [ 3] title: detail"
std::string format_result(const CriterionResult& r);

}  // namespace annulus
