#include "probematch/probing/online.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "probematch/errors.hpp"
#include "probematch/probing/crs.hpp"
#include "probematch/rng.hpp"
#include "probematch/sampling.hpp"

namespace probematch::probing {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "greedy") return Algorithm::kGreedy;
  if (name == "ocrs") return Algorithm::kOcrs;
  if (name == "rcrs") return Algorithm::kRcrs;
  throw Error("unknown algorithm \"" + name + "\" (expected greedy, ocrs or rcrs)");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kGreedy:
      return "greedy";
    case Algorithm::kOcrs:
      return "ocrs";
    case Algorithm::kRcrs:
      return "rcrs";
  }
  return "?";
}

OnlinePlan::OnlinePlan(const KnownIDInput& in, const lp::ConfigSolution& sol)
    : in_(&in), lp_objective_(sol.objective) {
  const auto expected = lp::config_groups(in);
  if (expected.size() != sol.groups.size()) {
    throw DataError("solution groups do not match the input");
  }
  tables_.resize(in.arrivals());
  for (std::size_t gi = 0; gi < expected.size(); ++gi) {
    const auto& grp = sol.groups[gi].group;
    if (grp.arrival != expected[gi].arrival || grp.type != expected[gi].type) {
      throw DataError("solution group " + std::to_string(gi) + " does not match the input");
    }
    tables_[grp.arrival].emplace_back(grp.type,
                                      StringDistribution(sol.groups[gi].strings, grp.mass));
  }
  z_ = lp::arrival_commit_probabilities(in, sol);
  const auto xt = lp::induced_edge_variables(in, sol);
  commit_weight_.assign(in.arrivals(), std::vector<double>(in.type_graph.offline_count(), 0.0));
  for (std::size_t gi = 0; gi < xt.size(); ++gi) {
    const auto& grp = sol.groups[gi].group;
    const OnlineVertex& v = in.type_graph.online(grp.type);
    for (std::size_t e = 0; e < v.degree(); ++e) {
      const Edge& edge = v.edges[e];
      commit_weight_[grp.arrival][edge.offline] += edge.weight * edge.probability * xt[gi][e];
    }
  }
}

const StringDistribution& OnlinePlan::strings(std::size_t arrival, OnlineIndex type) const {
  for (const auto& [t, d] : tables_.at(arrival)) {
    if (t == type) return d;
  }
  throw Error("arrival " + std::to_string(arrival) + " has no mass on type " + std::to_string(type));
}

std::vector<std::size_t> arrival_order(const ArrivalModel& m, std::size_t n, std::uint64_t seed,
                                       std::uint64_t trial, std::vector<double>* times) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  switch (m.kind) {
    case ArrivalModel::Kind::kAdversarialPermutation:
      if (!is_permutation_of_n(m.permutation, n)) throw DataError("arrival order is not a permutation");
      return m.permutation;
    case ArrivalModel::Kind::kRandomOrder: {
      CounterRng rng(seed, trial, Stream::kArrivals);
      for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      return order;
    }
    case ArrivalModel::Kind::kRandomArrivalTimes: {
      const std::uint64_t key = CounterRng(seed, trial, Stream::kArrivals).key();
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = to_unit(CounterRng::at(key, i));
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
      if (times) *times = std::move(y);
      return order;
    }
  }
  return order;
}

TrialResult run_trial(const OnlinePlan& plan, Algorithm alg, const ArrivalModel& arrivals,
                      std::uint64_t seed, std::uint64_t trial) {
  const KnownIDInput& in = plan.input();
  const std::size_t n = in.arrivals();
  TrialResult r;
  r.types = sample_types(in, seed, trial);
  std::vector<double> times;
  if (alg == Algorithm::kRcrs) {
    if (arrivals.kind == ArrivalModel::Kind::kAdversarialPermutation) {
      throw Error("the random-order scheme needs random arrivals, not a fixed permutation");
    }
    r.order = arrival_order(ArrivalModel::random_times(), n, seed, trial, &times);
  } else {
    r.order = arrival_order(arrivals, n, seed, trial);
  }

  EdgeStates states(seed, trial);
  const std::uint64_t string_key = CounterRng(seed, trial, Stream::kStrings).key();
  const std::uint64_t accept_key = CounterRng(seed, trial, Stream::kAcceptance).key();
  const std::size_t nu = in.type_graph.offline_count();
  std::vector<bool> taken(nu, false);
  std::vector<double> prefix(nu, 0.0);
  r.events.reserve(n);

  for (std::size_t i : r.order) {
    const OnlineIndex b = r.types[i];
    const OnlineVertex& v = in.type_graph.online(b);
    CommitEvent ev = vertex_probe(v, i, plan.strings(i, b), to_unit(CounterRng::at(string_key, i)),
                                  states);
    if (ev.edge) {
      const Edge& e = v.edges[*ev.edge];
      if (!taken[e.offline]) {
        bool accept = true;
        const double coin = to_unit(CounterRng::at(accept_key, i));
        if (alg == Algorithm::kOcrs) {
          accept = coin < ocrs_accept_prob(prefix[e.offline]);
        } else if (alg == Algorithm::kRcrs) {
          accept = coin < rcrs_accept_prob(times[i], plan.z()[i][e.offline]);
        }
        if (accept) {
          taken[e.offline] = true;
          r.matching.push_back({i, b, *ev.edge, e.offline, e.weight});
          r.weight += e.weight;
        }
      }
    }
    if (alg == Algorithm::kOcrs) {
      for (std::size_t u = 0; u < nu; ++u) prefix[u] += plan.z()[i][u];
    }
    r.events.push_back(std::move(ev));
  }
  r.probes = states.reveals();
  return r;
}

std::vector<std::string> audit_trial(const OnlinePlan& plan, const TrialResult& r,
                                     std::uint64_t seed, std::uint64_t trial) {
  const KnownIDInput& in = plan.input();
  const EdgeStates states(seed, trial);
  std::vector<std::string> out;
  std::vector<const CommitEvent*> by_arrival(in.arrivals(), nullptr);
  for (const auto& ev : r.events) {
    const std::string where = "arrival " + std::to_string(ev.arrival);
    if (ev.arrival >= in.arrivals() || by_arrival[ev.arrival]) {
      out.push_back(where + " processed twice or out of range");
      continue;
    }
    by_arrival[ev.arrival] = &ev;
    const OnlineVertex& v = in.type_graph.online(r.types[ev.arrival]);
    try {
      if (!membership(v.constraint, ev.probes)) out.push_back(where + " probed a non-member string");
    } catch (const InvalidStringError&) {
      out.push_back(where + " probed an edge twice");
    }
    for (std::size_t k = 0; k < ev.probes.size(); ++k) {
      const EdgeIndex e = ev.probes[k];
      const bool active = states.peek(ev.arrival, e, v.edges[e].probability);
      const bool last = k + 1 == ev.probes.size();
      if (active && !(last && ev.edge == e)) out.push_back(where + " ignored an active probe");
      if (!active && ev.edge == e) out.push_back(where + " committed to an inactive edge");
    }
    if (ev.edge && (ev.probes.empty() || ev.probes[ev.probes.size() - 1] != *ev.edge)) {
      out.push_back(where + " committed to an edge it did not probe last");
    }
  }
  std::set<OfflineIndex> offline;
  std::set<std::size_t> online;
  double weight = 0.0;
  for (const auto& m : r.matching) {
    const std::string where = "matched arrival " + std::to_string(m.arrival);
    if (!offline.insert(m.offline).second) out.push_back(where + " reuses an offline vertex");
    if (!online.insert(m.arrival).second) out.push_back(where + " matched twice");
    const CommitEvent* ev = m.arrival < by_arrival.size() ? by_arrival[m.arrival] : nullptr;
    if (!ev || ev->edge != m.edge) out.push_back(where + " was not its committed edge");
    weight += m.weight;
  }
  if (std::abs(weight - r.weight) > 1e-9 * std::max(1.0, weight)) {
    out.push_back("reported weight differs from the matching's weight");
  }
  return out;
}

double exact_expected_weight(const OnlinePlan& plan, Algorithm alg,
                             const std::vector<std::size_t>& order) {
  if (alg == Algorithm::kRcrs) throw Error("exact evaluation covers greedy and OCRS only");
  const std::size_t n = plan.input().arrivals();
  if (!is_permutation_of_n(order, n)) throw DataError("arrival order is not a permutation");
  const std::size_t nu = plan.input().type_graph.offline_count();
  std::vector<double> free_prob(nu, 1.0);
  std::vector<double> prefix(nu, 0.0);
  double total = 0.0;
  for (std::size_t i : order) {
    for (std::size_t u = 0; u < nu; ++u) {
      const double z = plan.z()[i][u];
      const double q = alg == Algorithm::kOcrs ? ocrs_accept_prob(prefix[u]) : 1.0;
      total += plan.commit_weight()[i][u] * q * free_prob[u];
      free_prob[u] *= 1.0 - z * q;
      prefix[u] += z;
    }
  }
  return total;
}

std::vector<std::size_t> worst_found_order(const OnlinePlan& plan, Algorithm alg,
                                           std::size_t exhaustive_limit) {
  const std::size_t n = plan.input().arrivals();
  std::vector<std::size_t> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  std::vector<std::size_t> best = cur;
  double best_val = exact_expected_weight(plan, alg, cur);
  if (n <= exhaustive_limit) {
    while (std::next_permutation(cur.begin(), cur.end())) {
      const double v = exact_expected_weight(plan, alg, cur);
      if (v < best_val - 1e-12) {
        best_val = v;
        best = cur;
      }
    }
    return best;
  }
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t a = 0; a + 1 < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        std::swap(best[a], best[b]);
        const double v = exact_expected_weight(plan, alg, best);
        if (v < best_val - 1e-12) {
          best_val = v;
          improved = true;
        } else {
          std::swap(best[a], best[b]);
        }
      }
    }
  }
  return best;
}

}  // namespace probematch::probing
