#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "probematch/constraint.hpp"

namespace probematch {

using OfflineIndex = std::uint32_t;
using OnlineIndex = std::uint32_t;

/// Edge between an offline vertex and the online vertex (or type node) that
/// owns it. The owning vertex is implied by the containing edge list.
struct Edge {
  OfflineIndex offline = 0;
  double weight = 0.0;
  double probability = 0.0;
};

struct OnlineVertex {
  std::string id;
  std::vector<Edge> edges;
  ProbingConstraint constraint;

  std::size_t degree() const noexcept { return edges.size(); }
  /// Local index of the edge to `u`, if any.
  std::optional<EdgeIndex> edge_to(OfflineIndex u) const noexcept;
};

/// Bipartite stochastic graph G = (U, V, E). Edges are stored sparsely; a
/// missing (u, v) pair behaves exactly like an edge with probability zero.
class StochasticGraph {
 public:
  StochasticGraph() = default;
  StochasticGraph(std::vector<std::string> offline, std::vector<OnlineVertex> online)
      : offline_(std::move(offline)), online_(std::move(online)) {}

  std::size_t offline_count() const noexcept { return offline_.size(); }
  std::size_t online_count() const noexcept { return online_.size(); }
  const std::vector<std::string>& offline_ids() const noexcept { return offline_; }
  const std::vector<OnlineVertex>& online() const noexcept { return online_; }
  std::vector<OnlineVertex>& online() noexcept { return online_; }
  const OnlineVertex& online(std::size_t v) const { return online_[v]; }
  const std::string& offline_id(OfflineIndex u) const { return offline_[u]; }

  std::optional<OfflineIndex> find_offline(const std::string& id) const;
  std::optional<OnlineIndex> find_online(const std::string& id) const;

  std::size_t edge_count() const noexcept;
  /// Sum over online vertices of the largest incident weight; bounds any
  /// matching's weight.
  double max_matching_weight_bound() const noexcept;

  OfflineIndex add_offline(std::string id);
  OnlineIndex add_online(OnlineVertex v);

 private:
  std::vector<std::string> offline_;
  std::vector<OnlineVertex> online_;
};

/// One entry of an arrival's type distribution.
struct TypeMass {
  OnlineIndex type = 0;
  double prob = 0.0;
};

/// Known i.d. input: a type graph H_typ = (U, B, F) plus n independent
/// arrival distributions over the type nodes B.
struct KnownIDInput {
  StochasticGraph type_graph;
  std::vector<std::vector<TypeMass>> distributions;  // one row per arrival

  std::size_t arrivals() const noexcept { return distributions.size(); }
  /// r_i(b); zero for pairs not present in row i.
  double mass(std::size_t arrival, OnlineIndex type) const noexcept;
  bool is_point_mass() const noexcept;
  bool is_identical() const noexcept;

  /// Known stochastic graph special case: n = |V| arrivals, arrival i is a
  /// point mass on online vertex i.
  static KnownIDInput from_graph(StochasticGraph g);

  /// Drops zero-mass entries, sorts rows by type and checks every row sums to
  /// one within 1e-12. Throws DataError otherwise.
  void normalize_rows();
};

struct ArrivalModel {
  enum class Kind { kAdversarialPermutation, kRandomOrder, kRandomArrivalTimes };
  Kind kind = Kind::kRandomArrivalTimes;
  std::vector<std::size_t> permutation;  // order[t] = arrival presented at step t

  static ArrivalModel adversarial(std::vector<std::size_t> order) {
    return {Kind::kAdversarialPermutation, std::move(order)};
  }
  static ArrivalModel random_order() { return {Kind::kRandomOrder, {}}; }
  static ArrivalModel random_times() { return {Kind::kRandomArrivalTimes, {}}; }
};

bool is_permutation_of_n(const std::vector<std::size_t>& order, std::size_t n);

struct Violation {
  std::string where;
  std::string rule;
};

/// Structural checks on a graph. Returns an empty list iff every invariant
/// holds. Oracle-backed constraints are spot-checked by sampling.
std::vector<Violation> validate_graph(const StochasticGraph& g, std::uint64_t spot_check_seed = 1);

/// Checks distribution rows in addition to the type graph.
std::vector<Violation> validate_input(const KnownIDInput& in);

}  // namespace probematch
