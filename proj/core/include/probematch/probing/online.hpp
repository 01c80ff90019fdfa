#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "probematch/graph.hpp"
#include "probematch/lp/config_lp.hpp"
#include "probematch/probing/vertex_probe.hpp"

namespace probematch::probing {

enum class Algorithm { kGreedy, kOcrs, kRcrs };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);

/// Everything the online algorithms need from an input and its
/// configuration-LP solution, precomputed once and shared by all trials.
class OnlinePlan {
 public:
  OnlinePlan(const KnownIDInput& in, const lp::ConfigSolution& sol);

  const KnownIDInput& input() const noexcept { return *in_; }
  double lp_objective() const noexcept { return lp_objective_; }
  /// String distribution for arrival i given type b (masses x_i(e||b)/r_i(b)).
  const StringDistribution& strings(std::size_t arrival, OnlineIndex type) const;
  /// z_{i,u}: probability arrival i commits to offline vertex u.
  const std::vector<std::vector<double>>& z() const noexcept { return z_; }
  /// Expected committed weight of arrival i on offline vertex u.
  const std::vector<std::vector<double>>& commit_weight() const noexcept { return commit_weight_; }

 private:
  const KnownIDInput* in_;
  double lp_objective_ = 0.0;
  std::vector<std::vector<std::pair<OnlineIndex, StringDistribution>>> tables_;
  std::vector<std::vector<double>> z_;
  std::vector<std::vector<double>> commit_weight_;
};

struct MatchedEdge {
  std::size_t arrival = 0;
  OnlineIndex type = 0;
  EdgeIndex edge = 0;
  OfflineIndex offline = 0;
  double weight = 0.0;
};

struct TrialResult {
  double weight = 0.0;
  std::vector<MatchedEdge> matching;
  std::vector<CommitEvent> events;   // in processing order
  std::vector<std::size_t> order;    // order[t] = arrival processed at step t
  std::vector<OnlineIndex> types;    // realized type of each arrival
  std::size_t probes = 0;
};

/// One trial: sample types, fix the arrival order, and process arrivals
/// with VertexProbe plus the algorithm's acceptance rule.
///  - greedy keeps every commit whose offline endpoint is free;
///  - OCRS keeps it with probability 1 / (2 - sum of z_{j,u} over earlier j);
///  - RCRS keeps it with probability exp(-Y_i z_{i,u}) for arrival time Y_i.
/// RCRS needs random arrivals; adversarial orders raise an error. Under a
/// random model RCRS always draws arrival times.
TrialResult run_trial(const OnlinePlan& plan, Algorithm alg, const ArrivalModel& arrivals,
                      std::uint64_t seed, std::uint64_t trial);

/// Probe-commit audit of a finished trial against the trial's hidden states.
/// Returns human-readable violations; empty when the trial is clean.
std::vector<std::string> audit_trial(const OnlinePlan& plan, const TrialResult& r,
                                     std::uint64_t seed, std::uint64_t trial);

/// Arrival order of a trial under a model (times are drawn from the
/// trial's arrival substream; ties go to the lower index).
std::vector<std::size_t> arrival_order(const ArrivalModel& m, std::size_t n, std::uint64_t seed,
                                       std::uint64_t trial, std::vector<double>* times = nullptr);

/// Exact expected weight of greedy or OCRS under a fixed order:
/// sum_i sum_u W_{i,u} q_{i,u} prod_{j before i} (1 - z_{j,u} q_{j,u}),
/// with q = 1 for greedy and the OCRS probability otherwise.
double exact_expected_weight(const OnlinePlan& plan, Algorithm alg,
                             const std::vector<std::size_t>& order);

/// Order minimizing exact_expected_weight: exhaustive for n <= exhaustive_limit,
/// otherwise pairwise-swap hill climbing from the identity. Ties keep the
/// earliest order found.
std::vector<std::size_t> worst_found_order(const OnlinePlan& plan, Algorithm alg,
                                           std::size_t exhaustive_limit = 7);

}  // namespace probematch::probing
