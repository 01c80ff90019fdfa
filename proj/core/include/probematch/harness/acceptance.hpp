#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace probematch::harness {

inline constexpr int kCriterionCount = 13;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  std::size_t threads = 0;
  std::size_t mc_trials = 100000;
};

/// Runs one acceptance criterion (1..13). Errors inside a criterion are
/// reported as a failure with the error text.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});

/// Runs the listed criteria (all when empty) in order.
std::vector<CriterionResult> run_acceptance_suite(const AcceptanceOptions& opts = {},
                                                  const std::vector<int>& ids = {});

std::string criterion_title(int id);

/// "PASS  3 column generation: ..." style line.
std::string format_result_line(const CriterionResult& r);

}  // namespace probematch::harness
