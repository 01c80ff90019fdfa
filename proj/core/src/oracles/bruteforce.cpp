#include "probematch/oracles/bruteforce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "probematch/errors.hpp"

namespace probematch::oracles {

namespace {

class AdaptiveSearch {
 public:
  AdaptiveSearch(const StochasticGraph& g, const AdaptiveLimits& limits) : g_(g), limits_(limits) {
    std::size_t bit = g.offline_count();
    double estimate = std::ldexp(1.0, static_cast<int>(g.offline_count()));
    for (const auto& v : g.online()) {
      if (v.degree() > 24) throw SizeLimitError("adaptive benchmark: online degree above 24", 0.0);
      offset_.push_back(bit);
      bit += v.degree() + 1;
      estimate *= std::ldexp(1.0, static_cast<int>(v.degree())) + 1.0;
      member_.emplace_back(std::size_t{1} << v.degree(), std::int8_t{-1});
    }
    if (bit > 64) throw SizeLimitError("adaptive benchmark: state does not fit in 64 bits", estimate);
    estimate_ = estimate;
  }

  double run() {
    std::uint64_t start = 0;
    for (std::size_t u = 0; u < g_.offline_count(); ++u) start |= std::uint64_t{1} << u;
    return solve(start);
  }

 private:
  std::uint64_t probed_mask(std::uint64_t st, std::size_t v) const {
    return (st >> offset_[v]) & ((std::uint64_t{1} << g_.online(v).degree()) - 1);
  }
  bool spent(std::uint64_t st, std::size_t v) const {
    return (st >> (offset_[v] + g_.online(v).degree())) & 1U;
  }

  bool member(std::size_t v, std::uint64_t mask) {
    auto& slot = member_[v][mask];
    if (slot < 0) {
      ProbeString s;
      for (EdgeIndex e = 0; e < g_.online(v).degree(); ++e) {
        if (mask >> e & 1U) s.push_back(e);
      }
      slot = membership(g_.online(v).constraint, s) ? 1 : 0;
    }
    return slot == 1;
  }

  double solve(std::uint64_t st) {
    if (auto it = memo_.find(st); it != memo_.end()) return it->second;
    double best = 0.0;
    for (std::size_t v = 0; v < g_.online_count(); ++v) {
      if (spent(st, v)) continue;
      const OnlineVertex& ov = g_.online(v);
      const std::uint64_t mask = probed_mask(st, v);
      for (EdgeIndex e = 0; e < ov.degree(); ++e) {
        const Edge& edge = ov.edges[e];
        if ((mask >> e & 1U) || edge.probability <= 0.0) continue;
        if (!(st >> edge.offline & 1U)) continue;
        if (!member(v, mask | std::uint64_t{1} << e)) continue;
        std::uint64_t active = st & ~(std::uint64_t{1} << edge.offline);
        active &= ~(((std::uint64_t{1} << ov.degree()) - 1) << offset_[v]);
        active |= std::uint64_t{1} << (offset_[v] + ov.degree());
        const std::uint64_t inactive = st | std::uint64_t{1} << (offset_[v] + e);
        double value = edge.probability * (edge.weight + solve(active));
        if (edge.probability < 1.0) value += (1.0 - edge.probability) * solve(inactive);
        best = std::max(best, value);
      }
    }
    if (memo_.size() >= limits_.max_states) {
      throw SizeLimitError("adaptive benchmark memo exceeds " + std::to_string(limits_.max_states) +
                               " states",
                           estimate_);
    }
    memo_.emplace(st, best);
    return best;
  }

  const StochasticGraph& g_;
  AdaptiveLimits limits_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<std::int8_t>> member_;
  std::unordered_map<std::uint64_t, double> memo_;
  double estimate_ = 0.0;
};

struct Probe {
  std::size_t online;
  OfflineIndex offline;
  double p;
  double w;
};

class PlanSearch {
 public:
  explicit PlanSearch(const StochasticGraph& g) : g_(g) {
    nu_ = g.offline_count();
    states_ = std::size_t{1} << (nu_ + g.online_count());
  }

  // Best interleaving of the given per-vertex probe sequences.
  double best_interleaving(const std::vector<std::vector<Probe>>& seqs) {
    seqs_ = &seqs;
    pos_.assign(seqs.size(), 0);
    remaining_ = 0;
    for (const auto& s : seqs) remaining_ += s.size();
    std::vector<double> dist(states_, 0.0);
    dist[0] = 1.0;
    best_ = 0.0;
    dfs(dist, 0.0);
    return best_;
  }

 private:
  void dfs(const std::vector<double>& dist, double value) {
    if (remaining_ == 0) {
      best_ = std::max(best_, value);
      return;
    }
    std::vector<double> next(states_);
    for (std::size_t v = 0; v < seqs_->size(); ++v) {
      if (pos_[v] == (*seqs_)[v].size()) continue;
      const Probe& pr = (*seqs_)[v][pos_[v]];
      const std::size_t ubit = std::size_t{1} << pr.offline;
      const std::size_t vbit = std::size_t{1} << (nu_ + pr.online);
      std::fill(next.begin(), next.end(), 0.0);
      double gain = 0.0;
      for (std::size_t s = 0; s < states_; ++s) {
        const double q = dist[s];
        if (q == 0.0) continue;
        if ((s & ubit) || (s & vbit)) {
          next[s] += q;
          continue;
        }
        next[s | ubit | vbit] += q * pr.p;
        next[s] += q * (1.0 - pr.p);
        gain += q * pr.p * pr.w;
      }
      ++pos_[v];
      --remaining_;
      dfs(next, value + gain);
      ++remaining_;
      --pos_[v];
    }
  }

  const StochasticGraph& g_;
  std::size_t nu_ = 0;
  std::size_t states_ = 0;
  const std::vector<std::vector<Probe>>* seqs_ = nullptr;
  std::vector<std::size_t> pos_;
  std::size_t remaining_ = 0;
  double best_ = 0.0;
};

}  // namespace

double adaptive_opt_bruteforce(const StochasticGraph& g, const AdaptiveLimits& limits) {
  return AdaptiveSearch(g, limits).run();
}

double nonadaptive_opt_bruteforce(const StochasticGraph& g, const NonAdaptiveLimits& limits) {
  const std::size_t nv = g.online_count();
  if (g.offline_count() + nv > 20) {
    throw SizeLimitError("non-adaptive benchmark: more than 20 vertices",
                         std::ldexp(1.0, static_cast<int>(g.offline_count() + nv)));
  }
  // Strings that probe a p = 0 edge are dominated by the same string without
  // it, which is a member by downward closure.
  std::vector<std::vector<std::vector<Probe>>> options(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const OnlineVertex& ov = g.online(v);
    for (const auto& s : enumerate_strings(ov.constraint, ov.degree(), 1'000'000)) {
      std::vector<Probe> seq;
      bool useful = true;
      for (EdgeIndex e : s) {
        const Edge& edge = ov.edges[e];
        if (edge.probability <= 0.0) {
          useful = false;
          break;
        }
        seq.push_back({v, edge.offline, edge.probability, edge.weight});
      }
      if (useful) options[v].push_back(std::move(seq));
    }
  }
  // work = sum over plans of interleavings * states, via length generating
  // functions: f[L] = sum prod count_v[l_v] / l_v!.
  std::vector<double> f{1.0};
  for (const auto& opts : options) {
    std::vector<double> cnt;
    for (const auto& s : opts) {
      if (cnt.size() <= s.size()) cnt.resize(s.size() + 1, 0.0);
      cnt[s.size()] += 1.0;
    }
    std::vector<double> nf(f.size() + cnt.size() - 1, 0.0);
    for (std::size_t a = 0; a < f.size(); ++a) {
      for (std::size_t b = 0; b < cnt.size(); ++b) nf[a + b] += f[a] * cnt[b] / std::tgamma(b + 1.0);
    }
    f = std::move(nf);
  }
  const double states = std::ldexp(1.0, static_cast<int>(g.offline_count() + nv));
  double work = 0.0;
  for (std::size_t len = 0; len < f.size(); ++len) {
    work += f[len] * std::tgamma(len + 1.0) * std::max<double>(1.0, static_cast<double>(len)) * states;
  }
  if (work > limits.max_work) throw SizeLimitError("non-adaptive benchmark plan space", work);

  PlanSearch search(g);
  std::vector<std::size_t> pick(nv, 0);
  std::vector<std::vector<Probe>> seqs(nv);
  double best = 0.0;
  while (true) {
    for (std::size_t v = 0; v < nv; ++v) seqs[v] = options[v][pick[v]];
    best = std::max(best, search.best_interleaving(seqs));
    std::size_t v = 0;
    while (v < nv && ++pick[v] == options[v].size()) pick[v++] = 0;
    if (v == nv) break;
  }
  return best;
}

double relaxed_opt(const StochasticGraph& g, const lp::ConfigLPOptions& opts) {
  return lp::solve_lp_config(g, opts).objective;
}

}  // namespace probematch::oracles
