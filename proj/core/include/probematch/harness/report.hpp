#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probematch/oracles/erdos_renyi.hpp"
#include "probematch/probing/online.hpp"

namespace probematch::harness {

struct EdgeFrequency {
  std::string offline;
  std::string online;
  double frequency = 0.0;
};

struct TrialReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// Two-sided 95% Hoeffding half-width from the per-trial weight bound.
  double hoeffding = 0.0;
  std::optional<double> lpopt;
  std::optional<double> ratio;
  double mean_probes = 0.0;
  std::vector<EdgeFrequency> edges;
  std::vector<double> weights;  // per trial, index-addressed
  /// Key/value echo of the configuration, written first in the CSV.
  std::vector<std::pair<std::string, std::string>> echo;
  double runtime_seconds = 0.0;

  double band_low() const noexcept { return mean - 3.0 * std_error; }
  double band_high() const noexcept { return mean + 3.0 * std_error; }
};

struct SimulationOptions {
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  /// Run the probe-commit audit on every trial and throw on a violation.
  bool audit = true;
};

/// Runs independent trials of one algorithm and aggregates them. Per-trial
/// results are written to fixed slots, so the report does not depend on the
/// number of workers.
TrialReport simulate(const probing::OnlinePlan& plan, probing::Algorithm alg,
                     const ArrivalModel& arrivals, const SimulationOptions& opts);

/// Largest weight any matching of one trial can have: the sum over arrivals
/// of the heaviest edge among the arrival's possible types.
double per_trial_weight_bound(const KnownIDInput& in);

/// Long-format CSV with header "metric,offline,online,value". Runtime is
/// left out so that reruns are byte-identical.
std::string report_csv(const TrialReport& r);

/// Same long format for an adaptivity-gap run: parameters, both means with
/// standard errors, the closed form, the ratio, then per-trial sizes with
/// the trial index in the "online" column.
std::string er_summary_csv(const oracles::ErSummary& s, std::size_t n, double p, std::size_t offline,
                           std::uint64_t seed);

/// Formats a double so that it reads back to the same value.
std::string format_double(double x);

}  // namespace probematch::harness
