#pragma once

#include <string>
#include <vector>

#include "probematch/graph.hpp"
#include "probematch/lp/config_lp.hpp"
#include "probematch/lp/edge_lps.hpp"

namespace probematch::io {

/// Parses a graph document:
///   {"offline": [ids], "online": [{"id", "edges": [{"u", "w", "p"}],
///    "constraint": {"kind": "patience", "limit": l}
///                | {"kind": "budget", "budget": B, "costs": {u: c}}
///                | {"kind": "explicit", "strings": [[u, ...], ...]}}]}
/// Ids may be strings or integers. A missing constraint or patience limit
/// means unbounded patience. Explicit families are completed under
/// substrings and permutations; each completion adds a warning. Duplicate
/// object keys and invariant violations raise DataError.
StochasticGraph parse_graph(const std::string& text, std::vector<std::string>* warnings = nullptr);

/// Parses a graph document, optionally extended with "n" and
/// "distributions": [[{"type", "prob"}, ...], ...] over the online nodes
/// (then read as type nodes). Without distributions the graph is a known
/// stochastic graph with one point-mass arrival per online vertex.
KnownIDInput parse_input(const std::string& text, std::vector<std::string>* warnings = nullptr);

std::string dump_graph(const StochasticGraph& g);
std::string dump_input(const KnownIDInput& in);

/// Configuration-LP solution document with groups, string masses and duals.
std::string dump_solution(const KnownIDInput& in, const lp::ConfigSolution& sol,
                          const std::string& lp_name);
lp::ConfigSolution parse_solution(const KnownIDInput& in, const std::string& text);

std::string dump_edge_solution(const StochasticGraph& g, const lp::EdgeLPSolution& sol,
                               const std::string& lp_name);

std::string read_file(const std::string& path);
/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace probematch::io
