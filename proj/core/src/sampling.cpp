#include "probematch/sampling.hpp"

#include "probematch/errors.hpp"

namespace probematch {

std::vector<OnlineIndex> sample_types(const KnownIDInput& in, std::uint64_t seed,
                                      std::uint64_t trial) {
  const std::uint64_t key = CounterRng(seed, trial, Stream::kInstantiation).key();
  std::vector<OnlineIndex> types(in.arrivals());
  for (std::size_t i = 0; i < in.arrivals(); ++i) {
    const auto& row = in.distributions[i];
    if (row.size() == 1) {
      types[i] = row.front().type;
      continue;
    }
    const double u = to_unit(CounterRng::at(key, i));
    double acc = 0.0;
    types[i] = row.back().type;
    for (const auto& tm : row) {
      acc += tm.prob;
      if (u < acc) {
        types[i] = tm.type;
        break;
      }
    }
  }
  return types;
}

Instantiation sample_instantiation(const KnownIDInput& in, std::uint64_t seed,
                                   std::uint64_t trial) {
  Instantiation out;
  out.type_of = sample_types(in, seed, trial);
  std::vector<OnlineVertex> online;
  online.reserve(out.type_of.size());
  for (std::size_t i = 0; i < out.type_of.size(); ++i) {
    OnlineVertex v = in.type_graph.online(out.type_of[i]);
    v.id = std::to_string(i) + ":" + v.id;
    online.push_back(std::move(v));
  }
  out.graph = StochasticGraph(in.type_graph.offline_ids(), std::move(online));
  return out;
}

bool EdgeStates::peek(std::size_t v, EdgeIndex k, double p) const noexcept {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return to_unit(CounterRng::at(derive_key({key_, v}), k)) < p;
}

bool EdgeStates::probe(std::size_t v, EdgeIndex k, double p) {
  if (!probed_.insert(slot(v, k)).second) {
    throw DoubleProbeError("edge " + std::to_string(k) + " of online vertex " +
                           std::to_string(v) + " probed twice in one trial");
  }
  ++reveals_;
  return peek(v, k, p);
}

bool EdgeStates::was_probed(std::size_t v, EdgeIndex k) const {
  return probed_.count(slot(v, k)) > 0;
}

std::vector<std::vector<std::uint8_t>> sample_edge_states(const StochasticGraph& g,
                                                          std::uint64_t seed,
                                                          std::uint64_t trial) {
  EdgeStates states(seed, trial);
  std::vector<std::vector<std::uint8_t>> out(g.online_count());
  for (std::size_t v = 0; v < g.online_count(); ++v) {
    const auto& edges = g.online(v).edges;
    out[v].resize(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      out[v][k] = states.peek(v, static_cast<EdgeIndex>(k), edges[k].probability) ? 1 : 0;
    }
  }
  return out;
}

}  // namespace probematch
