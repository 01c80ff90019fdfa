#pragma once

#include <span>

#include "probematch/graph.hpp"

namespace probematch::lp {

struct DemandResult {
  ProbeString string;
  double value = 0.0;
};

/// Maximizes sum_i adj[e_i] * p_{e_i} * g(s_{<i}) over the vertex's
/// constraint, where adj[k] is the adjusted weight of edge k.
///
/// Edges with non-positive adjusted weight are dropped and the rest sorted by
/// non-increasing adjusted weight; an optimal string can always be taken in
/// that order, so the search is an include/exclude recursion over the sorted
/// list. The memo key holds whatever the constraint needs to decide future
/// membership: the count for patience, the spent cost for budgets, and the
/// chosen set otherwise. Ties prefer the shorter string.
DemandResult demand_oracle(const OnlineVertex& v, std::span<const double> adj);

/// Adjusted weights w_e - alpha_u for every edge of `v`.
std::vector<double> adjusted_weights(const OnlineVertex& v, std::span<const double> alpha);

}  // namespace probematch::lp
