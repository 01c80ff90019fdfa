#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "probematch/graph.hpp"

namespace probematch::oracles {

/// Complete s x n bipartite graph with every p_e = p, unit weights and unit
/// patience; offline ids "u0".., online ids "v0"... Appends a warning when
/// s > p n or p >= n^{-1/2}, the regime where the gap construction degrades.
StochasticGraph er_instance(std::size_t n, double p, std::size_t s,
                            std::vector<std::string>* warnings = nullptr);

/// Matching size of one adaptive greedy run: online vertices in index order
/// each probe their lowest-indexed unmatched neighbour.
std::size_t er_adaptive_greedy_trial(const StochasticGraph& g, std::uint64_t seed,
                                     std::uint64_t trial);

/// Matching size of one run of the balanced non-adaptive plan: online
/// vertex j probes offline vertex j mod s.
std::size_t er_balanced_trial(const StochasticGraph& g, std::uint64_t seed, std::uint64_t trial);

/// Exact expected size of the balanced plan: sum over offline u of
/// 1 - (1 - p)^{n_u}, with n_u the number of online vertices assigned to u.
double er_balanced_value(std::size_t n, double p, std::size_t s);

/// E[min(Bin(n, p), s)]: the largest expected matching size any policy can
/// reach, since at most Bin(n, p) first probes can succeed.
double expected_min_binomial(std::size_t n, double p, std::size_t s);

struct ErSummary {
  std::size_t trials = 0;
  double adaptive_mean = 0.0;
  double adaptive_stderr = 0.0;
  double nonadaptive_mean = 0.0;
  double nonadaptive_stderr = 0.0;
  double balanced_closed_form = 0.0;
  double min_binomial = 0.0;
  double ratio = 0.0;  // nonadaptive_mean / adaptive_mean
  std::vector<std::size_t> adaptive_sizes;
  std::vector<std::size_t> nonadaptive_sizes;
};

/// Monte Carlo over both policies on the same trials, run on `threads`
/// workers (0 = hardware concurrency). Results do not depend on threads.
ErSummary run_er_experiment(std::size_t n, double p, std::size_t s, std::size_t trials,
                            std::uint64_t seed, std::size_t threads = 0);

}  // namespace probematch::oracles
