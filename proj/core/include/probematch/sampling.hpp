#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "probematch/graph.hpp"
#include "probematch/rng.hpp"

namespace probematch {

/// Type of each arrival for trial `trial`: arrival i is b with probability
/// r_i(b), independently across arrivals.
std::vector<OnlineIndex> sample_types(const KnownIDInput& in, std::uint64_t seed,
                                      std::uint64_t trial);

struct Instantiation {
  StochasticGraph graph;             // online vertex i is arrival i
  std::vector<OnlineIndex> type_of;  // type node of each arrival
};

/// Materializes G ~ (H_typ, D_1..D_n). Uses the same draws as sample_types.
Instantiation sample_instantiation(const KnownIDInput& in, std::uint64_t seed,
                                   std::uint64_t trial);

/// Hidden edge states of one trial. A state st(e) ~ Ber(p_e) is a pure
/// function of (seed, trial, online vertex, edge index), so states never need
/// to be stored; probe() reveals one and records the reveal.
class EdgeStates {
 public:
  EdgeStates(std::uint64_t seed, std::uint64_t trial) noexcept
      : key_(CounterRng(seed, trial, Stream::kEdgeStates).key()) {}

  /// Reveals st(e) for edge `k` of online vertex `v`. Throws DoubleProbeError
  /// when the same edge was already probed in this trial.
  bool probe(std::size_t v, EdgeIndex k, double p);

  /// State without recording a reveal. For oracles and tests only.
  bool peek(std::size_t v, EdgeIndex k, double p) const noexcept;

  std::size_t reveals() const noexcept { return reveals_; }
  bool was_probed(std::size_t v, EdgeIndex k) const;

 private:
  static std::uint64_t slot(std::size_t v, EdgeIndex k) noexcept {
    return (static_cast<std::uint64_t>(v) << 32) | k;
  }

  std::uint64_t key_;
  std::unordered_set<std::uint64_t> probed_;
  std::size_t reveals_ = 0;
};

/// Full state map st(e) for every edge of `g` (online-major, edge-list order).
std::vector<std::vector<std::uint8_t>> sample_edge_states(const StochasticGraph& g,
                                                          std::uint64_t seed, std::uint64_t trial);

}  // namespace probematch
