#include "probematch/probing/vertex_round.hpp"

#include <cmath>

#include "probematch/errors.hpp"

namespace probematch::probing {

namespace {

constexpr double kTol = 1e-12;

}  // namespace

void validate_y(const ProbingConstraint& c, const YSystem& y) {
  const auto root = y.find(ProbeString{});
  if (root == y.end() || std::abs(root->second - 1.0) > kTol) {
    throw InvalidYError("y(lambda) must equal 1");
  }
  std::map<ProbeString, double> child_sum;
  for (const auto& [s, val] : y) {
    if (!(val >= 0.0)) throw InvalidYError("negative y at " + s.to_string());
    if (s.empty() || val == 0.0) continue;
    if (!membership(c, s)) throw InvalidYError("y is positive on non-member " + s.to_string());
    child_sum[s.prefix(s.size() - 1)] += val;
  }
  for (const auto& [parent, total] : child_sum) {
    const auto it = y.find(parent);
    const double py = it == y.end() ? 0.0 : it->second;
    if (total > py + kTol) {
      throw InvalidYError("extensions of " + parent.to_string() + " carry " +
                          std::to_string(total) + " > y = " + std::to_string(py));
    }
  }
}

ProbeString vertex_round(const YSystem& y, CounterRng& rng) {
  ProbeString cur;
  double ycur = 1.0;
  while (true) {
    // Children of `cur` are contiguous in the map right after it.
    auto it = y.upper_bound(cur);
    const double u = rng.uniform() * ycur;
    double acc = 0.0;
    bool moved = false;
    for (; it != y.end() && cur.is_prefix_of(it->first); ++it) {
      if (it->first.size() != cur.size() + 1 || it->second <= 0.0) continue;
      acc += it->second;
      if (u < acc) {
        cur = it->first;
        ycur = it->second;
        moved = true;
        break;
      }
    }
    if (!moved) return cur;
  }
}

YSystem y_from_masses(const std::vector<lp::WeightedString>& strings) {
  YSystem y;
  y[ProbeString{}] = 1.0;
  for (const auto& ws : strings) {
    if (ws.mass <= 0.0) continue;
    for (std::size_t k = 1; k <= ws.string.size(); ++k) y[ws.string.prefix(k)] += ws.mass;
  }
  return y;
}

}  // namespace probematch::probing
