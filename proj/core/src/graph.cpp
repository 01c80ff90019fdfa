#include "probematch/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "probematch/errors.hpp"
#include "probematch/rng.hpp"

namespace probematch {

std::optional<EdgeIndex> OnlineVertex::edge_to(OfflineIndex u) const noexcept {
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (edges[k].offline == u) return static_cast<EdgeIndex>(k);
  }
  return std::nullopt;
}

std::optional<OfflineIndex> StochasticGraph::find_offline(const std::string& id) const {
  for (std::size_t u = 0; u < offline_.size(); ++u) {
    if (offline_[u] == id) return static_cast<OfflineIndex>(u);
  }
  return std::nullopt;
}

std::optional<OnlineIndex> StochasticGraph::find_online(const std::string& id) const {
  for (std::size_t v = 0; v < online_.size(); ++v) {
    if (online_[v].id == id) return static_cast<OnlineIndex>(v);
  }
  return std::nullopt;
}

std::size_t StochasticGraph::edge_count() const noexcept {
  std::size_t m = 0;
  for (const auto& v : online_) m += v.edges.size();
  return m;
}

double StochasticGraph::max_matching_weight_bound() const noexcept {
  double total = 0.0;
  for (const auto& v : online_) {
    double best = 0.0;
    for (const auto& e : v.edges) best = std::max(best, e.weight);
    total += best;
  }
  return total;
}

OfflineIndex StochasticGraph::add_offline(std::string id) {
  offline_.push_back(std::move(id));
  return static_cast<OfflineIndex>(offline_.size() - 1);
}

OnlineIndex StochasticGraph::add_online(OnlineVertex v) {
  online_.push_back(std::move(v));
  return static_cast<OnlineIndex>(online_.size() - 1);
}

double KnownIDInput::mass(std::size_t arrival, OnlineIndex type) const noexcept {
  for (const auto& tm : distributions[arrival]) {
    if (tm.type == type) return tm.prob;
  }
  return 0.0;
}

bool KnownIDInput::is_point_mass() const noexcept {
  return std::all_of(distributions.begin(), distributions.end(),
                     [](const auto& row) { return row.size() == 1; });
}

bool KnownIDInput::is_identical() const noexcept {
  for (std::size_t i = 1; i < distributions.size(); ++i) {
    const auto& a = distributions[0];
    const auto& b = distributions[i];
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k].type != b[k].type || a[k].prob != b[k].prob) return false;
    }
  }
  return true;
}

KnownIDInput KnownIDInput::from_graph(StochasticGraph g) {
  KnownIDInput in;
  const std::size_t n = g.online_count();
  in.type_graph = std::move(g);
  in.distributions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    in.distributions[i].push_back({static_cast<OnlineIndex>(i), 1.0});
  }
  return in;
}

void KnownIDInput::normalize_rows() {
  for (std::size_t i = 0; i < distributions.size(); ++i) {
    auto& row = distributions[i];
    double total = 0.0;
    for (const auto& tm : row) {
      if (!(tm.prob >= 0.0) || tm.prob > 1.0) {
        throw DataError("arrival " + std::to_string(i) + " has probability outside [0,1]");
      }
      if (tm.type >= type_graph.online_count()) {
        throw DataError("arrival " + std::to_string(i) + " references unknown type node");
      }
      total += tm.prob;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw DataError("distribution of arrival " + std::to_string(i) + " sums to " +
                      std::to_string(total) + ", expected 1");
    }
    std::erase_if(row, [](const TypeMass& tm) { return tm.prob == 0.0; });
    std::sort(row.begin(), row.end(),
              [](const TypeMass& a, const TypeMass& b) { return a.type < b.type; });
    for (std::size_t k = 1; k < row.size(); ++k) {
      if (row[k].type == row[k - 1].type) {
        throw DataError("arrival " + std::to_string(i) + " lists a type twice");
      }
    }
  }
}

bool is_permutation_of_n(const std::vector<std::size_t>& order, std::size_t n) {
  if (order.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (std::size_t x : order) {
    if (x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

namespace {

void check_oracle_closure(const OnlineVertex& v, const OracleBacked& o, std::uint64_t seed,
                          std::vector<Violation>& out) {
  const std::size_t d = v.degree();
  if (d == 0 || !o.member) return;
  CounterRng rng(derive_key({seed, d}));
  for (int trial = 0; trial < 64; ++trial) {
    // Random string grown while the oracle accepts it.
    std::vector<EdgeIndex> pool(d);
    for (std::size_t k = 0; k < d; ++k) pool[k] = static_cast<EdgeIndex>(k);
    std::vector<EdgeIndex> s;
    while (!pool.empty()) {
      const std::size_t pick = rng.below(pool.size());
      s.push_back(pool[pick]);
      if (!o.member(s)) {
        s.pop_back();
        break;
      }
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    if (s.size() < 2) continue;
    std::vector<EdgeIndex> perm = s;
    std::reverse(perm.begin(), perm.end());
    std::vector<EdgeIndex> drop(s.begin() + 1, s.end());
    if (!o.member(perm) || !o.member(drop)) {
      out.push_back({"online " + v.id, "oracle-backed constraint is not downward-closed on " +
                                           ProbeString(s).to_string()});
      return;
    }
  }
}

}  // namespace

std::vector<Violation> validate_graph(const StochasticGraph& g, std::uint64_t spot_check_seed) {
  std::vector<Violation> out;
  std::set<std::string> ids;
  for (const auto& id : g.offline_ids()) {
    if (!ids.insert(id).second) out.push_back({"offline " + id, "duplicate offline id"});
  }
  std::set<std::string> vids;
  for (const auto& v : g.online()) {
    if (!vids.insert(v.id).second) out.push_back({"online " + v.id, "duplicate online id"});
    std::set<OfflineIndex> seen;
    for (std::size_t k = 0; k < v.edges.size(); ++k) {
      const Edge& e = v.edges[k];
      std::string where = "edge " + std::to_string(k) + " of online " + v.id;
      if (e.offline >= g.offline_count()) {
        out.push_back({where, "offline endpoint out of range"});
        continue;
      }
      where = "edge (" + g.offline_id(e.offline) + "," + v.id + ")";
      if (!(e.probability >= 0.0 && e.probability <= 1.0)) {
        out.push_back({where, "probability outside [0,1]"});
      }
      if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
        out.push_back({where, "negative or non-finite weight"});
      }
      if (!seen.insert(e.offline).second) out.push_back({where, "duplicate (offline, online) pair"});
    }
    const auto& c = v.constraint;
    if (const auto* b = std::get_if<Budget>(&c.kind())) {
      if (!(b->budget >= 0.0)) out.push_back({"online " + v.id, "negative budget"});
      if (b->costs.size() != v.degree()) {
        out.push_back({"online " + v.id, "budget costs do not cover every edge"});
      }
      for (double cost : b->costs) {
        if (!(cost >= 0.0)) out.push_back({"online " + v.id, "negative probing cost"});
      }
    } else if (const auto* ex = std::get_if<Explicit>(&c.kind())) {
      for (const auto& s : ex->strings) {
        for (EdgeIndex e : s) {
          if (e >= v.degree()) {
            out.push_back({"online " + v.id, "explicit string references missing edge"});
            break;
          }
        }
      }
      for (auto& msg : explicit_closure_violations(*ex)) {
        out.push_back({"online " + v.id, "downward closure: " + msg});
      }
    } else if (const auto* o = std::get_if<OracleBacked>(&c.kind())) {
      check_oracle_closure(v, *o, spot_check_seed, out);
    }
  }
  return out;
}

std::vector<Violation> validate_input(const KnownIDInput& in) {
  auto out = validate_graph(in.type_graph);
  for (std::size_t i = 0; i < in.distributions.size(); ++i) {
    double total = 0.0;
    for (const auto& tm : in.distributions[i]) {
      total += tm.prob;
      if (tm.type >= in.type_graph.online_count()) {
        out.push_back({"arrival " + std::to_string(i), "unknown type node"});
      }
      if (!(tm.prob > 0.0)) {
        out.push_back({"arrival " + std::to_string(i), "non-positive retained mass"});
      }
    }
    if (std::abs(total - 1.0) > 1e-12) {
      out.push_back({"arrival " + std::to_string(i), "distribution does not sum to 1"});
    }
  }
  return out;
}

}  // namespace probematch
