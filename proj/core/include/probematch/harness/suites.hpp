#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "probematch/graph.hpp"

namespace probematch::harness {

struct Instance {
  std::string name;
  KnownIDInput input;
};

/// Reproducible instance families, named with their parameters:
///   star(k)                  one online vertex with unit patience and k
///                                 unit-weight edges of probability 1/k
///   er(n,p,s)                     complete s x n graph, probability p, unit
///                                 patience
///   random-small(count,seed)      |U|,|V| <= 4, patience <= 2, p and w
///                                 uniform on (0, 1]
///   unbounded-patience(count,seed) degree <= 3, no probing limit
///   random-id(count,seed)         known i.d. inputs, |U| <= 3, |B| <= 3, n <= 4
///   random-iid(count,seed)        as random-id with identical rows
/// Throws DataError for unknown names or malformed parameters.
std::vector<Instance> generate_suite(const std::string& spec);

std::vector<std::string> suite_names();

StochasticGraph star_graph(std::size_t k, std::size_t patience = 1);

/// Members of the random families, addressable one at a time.
StochasticGraph random_small_graph(std::uint64_t seed, std::size_t index);
StochasticGraph unbounded_patience_graph(std::uint64_t seed, std::size_t index);
KnownIDInput random_id_input(std::uint64_t seed, std::size_t index, bool identical);

}  // namespace probematch::harness
