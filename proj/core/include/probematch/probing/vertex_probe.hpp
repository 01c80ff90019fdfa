#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "probematch/graph.hpp"
#include "probematch/lp/config_lp.hpp"
#include "probematch/sampling.hpp"

namespace probematch::probing {

/// What one online arrival did: the strings it probed, in order, and the
/// edge it committed to (the first active probe), if any.
struct CommitEvent {
  std::size_t arrival = 0;
  std::optional<EdgeIndex> edge;
  ProbeString probes;
};

/// Finite distribution over probe strings, drawn by inverse CDF.
class StringDistribution {
 public:
  StringDistribution() = default;
  /// `total` is the mass the strings must sum to (1 for a known graph,
  /// r_i(b) for a type group); masses are divided by it. Throws
  /// InvalidDistributionError when the sum is off by more than 1e-9.
  explicit StringDistribution(std::vector<lp::WeightedString> strings, double total = 1.0);

  const ProbeString& draw(double u) const;
  const std::vector<lp::WeightedString>& strings() const noexcept { return strings_; }

 private:
  std::vector<lp::WeightedString> strings_;
  std::vector<double> cumulative_;
};

/// Probes the string selected by `u` in order and commits to the first
/// active edge. States come from `states` under slot `arrival`.
CommitEvent vertex_probe(const OnlineVertex& v, std::size_t arrival, const StringDistribution& dist,
                         double u, EdgeStates& states);

}  // namespace probematch::probing
