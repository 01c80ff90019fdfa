#pragma once

#include <map>
#include <vector>

#include "probematch/graph.hpp"
#include "probematch/lp/config_lp.hpp"
#include "probematch/rng.hpp"

namespace probematch::probing {

/// Prefix probabilities y(e) over a vertex's constraint. Strings absent from
/// the map have y = 0.
using YSystem = std::map<ProbeString, double>;

/// Throws InvalidYError unless y(lambda) = 1, every y is non-negative, every
/// positive string is a member of `c`, and for every prefix e' the children
/// (e', e) have total y at most y(e') + 1e-12.
void validate_y(const ProbingConstraint& c, const YSystem& y);

/// Draws a string whose first k characters equal e with probability y(e).
/// At prefix e' the walk stops with probability 1 - sum_e y(e', e) / y(e')
/// and otherwise moves to child (e', e) with probability proportional to
/// y(e', e). Consumes one uniform per step from `rng`.
ProbeString vertex_round(const YSystem& y, CounterRng& rng);

/// y(e) = total mass of the strings that start with e, for a distribution
/// over complete strings (the LP masses of one vertex).
YSystem y_from_masses(const std::vector<lp::WeightedString>& strings);

}  // namespace probematch::probing
