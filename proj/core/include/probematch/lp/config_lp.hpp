#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "probematch/graph.hpp"
#include "probematch/lp/model.hpp"
#include "probematch/lp/simplex.hpp"

namespace probematch::lp {

/// Probability that every edge of `s` is inactive; 1 for lambda.
double g_value(const OnlineVertex& v, std::span<const EdgeIndex> s);

/// Expected weight of the first active edge when `s` is probed in order.
double val(const OnlineVertex& v, const ProbeString& s);

/// Same as val() with `weights[k]` replacing the weight of edge k.
double val_with(const OnlineVertex& v, const ProbeString& s, std::span<const double> weights);

/// The string with its edges rearranged by non-increasing weight (stable in
/// the original position for equal weights).
ProbeString weight_sorted(const OnlineVertex& v, const ProbeString& s);

/// One distribution row of the configuration LP: arrival i with type b and
/// mass r_i(b). For a known graph every group is (v, v, 1).
struct ConfigGroup {
  std::size_t arrival = 0;
  OnlineIndex type = 0;
  double mass = 1.0;
};

/// Distribution groups in row order: arrivals ascending, types ascending.
std::vector<ConfigGroup> config_groups(const KnownIDInput& in);

/// Rows 0..|U|-1 are offline matching rows, followed by one equality row per
/// group. Column metadata records (group, string).
LPModel build_lp_config(const StochasticGraph& g, std::size_t cap);
LPModel build_lp_config_id(const KnownIDInput& in, std::size_t cap);

enum class LPMethod { kEnumerate, kColumnGeneration };

struct ConfigLPOptions {
  LPMethod method = LPMethod::kEnumerate;
  /// Per-type string cap for enumeration.
  std::size_t enumerate_cap = 10000;
  std::size_t max_rounds = 10000;
  double pricing_tol = 1e-9;
  SimplexOptions simplex;
};

struct WeightedString {
  ProbeString string;
  double mass = 0.0;
};

struct GroupSolution {
  ConfigGroup group;
  std::vector<WeightedString> strings;  // positive-mass columns only
  double beta = 0.0;
};

struct ConfigSolution {
  std::vector<GroupSolution> groups;
  std::vector<double> alpha;  // one per offline vertex
  double objective = 0.0;
  double dual_objective = 0.0;
  std::size_t columns = 0;
  std::size_t rounds = 0;
  double max_primal_residual = 0.0;
};

ConfigSolution solve_lp_config(const KnownIDInput& in, const ConfigLPOptions& opts = {});
ConfigSolution solve_lp_config(const StochasticGraph& g, const ConfigLPOptions& opts = {});

/// Reads a solution out of a solved configuration model.
ConfigSolution extract_solution(const KnownIDInput& in, const LPModel& model,
                                const SimplexResult& res);

/// x~ per group and local edge: sum over strings containing e of
/// g(prefix before e) times the string's mass.
std::vector<std::vector<double>> induced_edge_variables(const KnownIDInput& in,
                                                        const ConfigSolution& sol);

/// z per group and local edge: p_e * x~_e / r_i(b). This is the conditional
/// commit probability of arrival i to edge e given its type is b.
std::vector<std::vector<double>> conditional_commit_probabilities(const KnownIDInput& in,
                                                                  const ConfigSolution& sol);

/// z_{u,i} = sum over types b of p_{u,b} x~_{u,i}(b): probability that
/// arrival i commits to u. Indexed [arrival][offline].
std::vector<std::vector<double>> arrival_commit_probabilities(const KnownIDInput& in,
                                                              const ConfigSolution& sol);

/// Sum over groups and strings of val(string) * mass.
double relaxed_value(const KnownIDInput& in, const ConfigSolution& sol);

}  // namespace probematch::lp
