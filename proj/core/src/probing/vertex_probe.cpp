#include "probematch/probing/vertex_probe.hpp"

#include <algorithm>
#include <cmath>

#include "probematch/errors.hpp"

namespace probematch::probing {

StringDistribution::StringDistribution(std::vector<lp::WeightedString> strings, double total)
    : strings_(std::move(strings)) {
  double sum = 0.0;
  for (const auto& ws : strings_) {
    if (!(ws.mass >= 0.0)) throw InvalidDistributionError("negative string mass");
    sum += ws.mass;
  }
  if (std::abs(sum - total) > 1e-9 || sum <= 0.0) {
    throw InvalidDistributionError("string masses sum to " + std::to_string(sum) + ", expected " +
                                   std::to_string(total));
  }
  cumulative_.reserve(strings_.size());
  double acc = 0.0;
  for (auto& ws : strings_) {
    ws.mass /= sum;
    acc += ws.mass;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

const ProbeString& StringDistribution::draw(double u) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                       strings_.size() - 1);
  return strings_[k].string;
}

CommitEvent vertex_probe(const OnlineVertex& v, std::size_t arrival, const StringDistribution& dist,
                         double u, EdgeStates& states) {
  CommitEvent ev;
  ev.arrival = arrival;
  for (EdgeIndex e : dist.draw(u)) {
    ev.probes.push_back(e);
    if (states.probe(arrival, e, v.edges[e].probability)) {
      ev.edge = e;
      break;
    }
  }
  return ev;
}

}  // namespace probematch::probing
