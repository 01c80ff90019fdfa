#include "probematch/lp/demand_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "probematch/errors.hpp"

namespace probematch::lp {

namespace {

struct Key {
  std::size_t index = 0;
  std::size_t count = 0;
  std::uint64_t cost_bits = 0;
  std::uint64_t mask = 0;
  auto operator<=>(const Key&) const = default;
};

struct Memo {
  double value = 0.0;
  bool take = false;
};

enum class Mode { kPatience, kBudget, kGeneric };

class DemandSearch {
 public:
  DemandSearch(const OnlineVertex& v, std::span<const double> adj, std::vector<EdgeIndex> order)
      : v_(v), adj_(adj), order_(std::move(order)) {
    const auto& c = v.constraint;
    if (c.is<Patience>()) {
      mode_ = Mode::kPatience;
      limit_ = c.as<Patience>().limit;
    } else if (c.is<Budget>()) {
      mode_ = Mode::kBudget;
    } else {
      mode_ = Mode::kGeneric;
      if (order_.size() > 63) {
        throw SizeLimitError("demand oracle over an explicit or oracle constraint",
                             static_cast<double>(order_.size()));
      }
    }
  }

  DemandResult run() {
    State st;
    const double best = solve(0, st);
    DemandResult out;
    out.value = best;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      const Memo& m = memo_.at(key(i, st));
      if (m.take) {
        out.string.push_back(order_[i]);
        advance(st, i);
      }
    }
    return out;
  }

 private:
  struct State {
    std::size_t count = 0;
    double cost = 0.0;
    std::uint64_t mask = 0;
    ProbeString chosen;
  };

  Key key(std::size_t i, const State& st) const {
    Key k;
    k.index = i;
    switch (mode_) {
      case Mode::kPatience:
        k.count = st.count;
        break;
      case Mode::kBudget:
        k.cost_bits = std::bit_cast<std::uint64_t>(st.cost);
        break;
      case Mode::kGeneric:
        k.mask = st.mask;
        break;
    }
    return k;
  }

  bool can_take(const State& st, std::size_t i) const {
    const EdgeIndex e = order_[i];
    switch (mode_) {
      case Mode::kPatience:
        return st.count < limit_;
      case Mode::kBudget: {
        const auto& b = v_.constraint.as<Budget>();
        return st.cost + b.costs[e] <= b.budget + 1e-12;
      }
      case Mode::kGeneric: {
        ProbeString next = st.chosen.extended(e);
        return membership(v_.constraint, next);
      }
    }
    return false;
  }

  void advance(State& st, std::size_t i) const {
    const EdgeIndex e = order_[i];
    ++st.count;
    if (mode_ == Mode::kBudget) st.cost += v_.constraint.as<Budget>().costs[e];
    st.mask |= std::uint64_t{1} << (i & 63);
    st.chosen.push_back(e);
  }

  double solve(std::size_t i, State& st) {
    if (i == order_.size()) return 0.0;
    const Key k = key(i, st);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second.value;
    Memo m;
    m.value = solve(i + 1, st);
    if (can_take(st, i)) {
      const EdgeIndex e = order_[i];
      const double p = v_.edges[e].probability;
      State next = st;
      advance(next, i);
      const double with = p * adj_[e] + (1.0 - p) * solve(i + 1, next);
      if (with > m.value) {
        m.value = with;
        m.take = true;
      }
    }
    memo_.emplace(k, m);
    return m.value;
  }

  const OnlineVertex& v_;
  std::span<const double> adj_;
  std::vector<EdgeIndex> order_;
  Mode mode_ = Mode::kGeneric;
  std::size_t limit_ = 0;
  std::map<Key, Memo> memo_;
};

}  // namespace

std::vector<double> adjusted_weights(const OnlineVertex& v, std::span<const double> alpha) {
  std::vector<double> adj(v.degree());
  for (std::size_t k = 0; k < v.degree(); ++k) {
    adj[k] = v.edges[k].weight - alpha[v.edges[k].offline];
  }
  return adj;
}

DemandResult demand_oracle(const OnlineVertex& v, std::span<const double> adj) {
  if (adj.size() != v.degree()) throw Error("adjusted weight count differs from degree");
  std::vector<EdgeIndex> order;
  for (EdgeIndex k = 0; k < v.degree(); ++k) {
    if (adj[k] > 0.0 && v.edges[k].probability > 0.0) order.push_back(k);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeIndex a, EdgeIndex b) { return adj[a] > adj[b]; });
  return DemandSearch(v, adj, std::move(order)).run();
}

}  // namespace probematch::lp
