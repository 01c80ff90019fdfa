#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "probematch/graph.hpp"
#include "probematch/harness/report.hpp"
#include "probematch/lp/config_lp.hpp"
#include "probematch/probing/online.hpp"

namespace probematch::harness {

/// How arrivals are ordered: a 0-based permutation file, random arrival
/// times, a uniformly random order, or the worst order the exact evaluator
/// finds.
struct ArrivalSpec {
  enum class Kind { kPermutationFile, kRandom, kRandomOrder, kWorstFound };
  Kind kind = Kind::kRandom;
  std::string path;

  /// Parses "perm:FILE", "random", "random-order" or "worst-found".
  static ArrivalSpec parse(const std::string& text);
  std::string to_string() const;
};

/// One self-contained experiment. Exactly one of `input_file` and
/// `generator` names the instance; `generator` is a suite spec and
/// `instance_index` picks one of its members.
struct ExperimentConfig {
  std::string input_file;
  std::string generator;
  std::size_t instance_index = 0;
  std::string solution_file;  // optional precomputed configuration solution
  lp::LPMethod method = lp::LPMethod::kEnumerate;
  probing::Algorithm algorithm = probing::Algorithm::kOcrs;
  ArrivalSpec arrivals;
  std::size_t trials = 1;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
  std::string csv_output;
};

/// Parses a JSON experiment config:
///   {"instance": {"file": path} | {"generator": spec, "index": k},
///    "solution": path, "method": "enumerate" | "colgen",
///    "algorithm": "greedy" | "ocrs" | "rcrs", "arrivals": spec,
///    "trials": N, "seed": S, "threads": T, "output": {"csv": path}}
/// Relative paths resolve against `base_dir`. Throws DataError when the
/// config is invalid, including a missing seed or zero trials.
ExperimentConfig parse_experiment_config(const std::string& text, const std::string& base_dir = "");

/// Loads the instance a config names.
KnownIDInput load_instance(const ExperimentConfig& cfg);

/// Resolves the arrival model for a plan; worst-found runs the search.
ArrivalModel resolve_arrivals(const ArrivalSpec& spec, const probing::OnlinePlan& plan,
                              probing::Algorithm alg);

/// Reads a 0-based permutation (whitespace or comma separated).
std::vector<std::size_t> read_permutation(const std::string& path, std::size_t n);

/// Loads the instance, solves or loads the LP, simulates and, when an output
/// path is set, writes the CSV report atomically. Errors carry config context.
TrialReport run_experiment(const ExperimentConfig& cfg);

}  // namespace probematch::harness
