#pragma once

// Small independent reference implementations. They share no code with the
// library beyond its data types and are deliberately naive.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "probematch/graph.hpp"

namespace probematch::testing {

/// P[all edges of s inactive] by summing over every state vector of s.
inline double naive_g(const OnlineVertex& v, const ProbeString& s) {
  const std::size_t k = s.size();
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
    double pr = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double p = v.edges[s[i]].probability;
      pr *= (mask >> i & 1U) ? p : 1.0 - p;
    }
    if (mask == 0) total += pr;
  }
  return total;
}

/// Expected weight of the first active edge of s, by state enumeration.
inline double naive_val(const OnlineVertex& v, const ProbeString& s, const std::vector<double>& w) {
  const std::size_t k = s.size();
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
    double pr = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double p = v.edges[s[i]].probability;
      pr *= (mask >> i & 1U) ? p : 1.0 - p;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1U) {
        total += pr * w[s[i]];
        break;
      }
    }
  }
  return total;
}

inline std::vector<double> weights_of(const OnlineVertex& v) {
  std::vector<double> w;
  for (const auto& e : v.edges) w.push_back(e.weight);
  return w;
}

/// Every ordered tuple of distinct edges satisfying `member`.
inline std::vector<ProbeString> all_tuples(std::size_t degree,
                                           const std::function<bool(const ProbeString&)>& member) {
  std::vector<ProbeString> out;
  ProbeString cur;
  std::vector<bool> used(degree, false);
  std::function<void()> rec = [&] {
    if (!member(cur)) return;
    out.push_back(cur);
    for (EdgeIndex e = 0; e < degree; ++e) {
      if (used[e]) continue;
      used[e] = true;
      cur.push_back(e);
      rec();
      cur.pop_back();
      used[e] = false;
    }
  };
  rec();
  return out;
}

/// Maximum-weight bipartite matching by exhaustive assignment (online side
/// picks an unused offline vertex or nothing).
inline double max_weight_matching(const StochasticGraph& g) {
  std::vector<bool> used(g.offline_count(), false);
  std::function<double(std::size_t)> rec = [&](std::size_t v) -> double {
    if (v == g.online_count()) return 0.0;
    double best = rec(v + 1);
    for (const auto& e : g.online(v).edges) {
      if (used[e.offline]) continue;
      used[e.offline] = true;
      best = std::max(best, e.weight + rec(v + 1));
      used[e.offline] = false;
    }
    return best;
  };
  return rec(0);
}

/// Fractional bipartite matching LP value equals the integral one on
/// bipartite graphs, so the max-weight matching doubles as that oracle.
inline double fractional_matching_value(const StochasticGraph& g) { return max_weight_matching(g); }

}  // namespace probematch::testing
