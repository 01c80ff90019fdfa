#pragma once

#include <cstddef>

#include "probematch/graph.hpp"
#include "probematch/lp/config_lp.hpp"

namespace probematch::oracles {

struct AdaptiveLimits {
  /// Largest memo table before giving up.
  std::size_t max_states = 20'000'000;
};

/// Optimal expected weight over all offline adaptive probe-commit policies,
/// which may interleave probes across online vertices in any order.
///
/// A state records the available offline vertices and, per online vertex,
/// the set of edges already probed (all found inactive) or that the vertex
/// is spent. The probed set, not just its size, is kept because an edge
/// known to be inactive must not be probed again. Membership only depends
/// on the set since constraints are closed under permutation.
/// Throws SizeLimitError when the state does not fit in 64 bits or the memo
/// outgrows the limit.
double adaptive_opt_bruteforce(const StochasticGraph& g, const AdaptiveLimits& limits = {});

struct NonAdaptiveLimits {
  /// Upper bound on probe steps evaluated across all plans.
  double max_work = 5e7;
};

/// Best deterministic non-adaptive plan: one string per online vertex plus a
/// global interleaving of all probes, fixed in advance. A probed edge whose
/// endpoints are both free and which is active is matched; probes of a
/// matched online vertex are skipped. Each plan is evaluated exactly by
/// propagating the distribution over (matched offline set, matched online
/// set). Throws SizeLimitError when the estimated work exceeds the limit.
double nonadaptive_opt_bruteforce(const StochasticGraph& g, const NonAdaptiveLimits& limits = {});

/// OPT_rel(G): the configuration LP optimum.
double relaxed_opt(const StochasticGraph& g, const lp::ConfigLPOptions& opts = {});

}  // namespace probematch::oracles
