#include "probematch/oracles/erdos_renyi.hpp"

#include <cmath>
#include <sstream>

#include "probematch/errors.hpp"
#include "probematch/parallel.hpp"
#include "probematch/sampling.hpp"

namespace probematch::oracles {

StochasticGraph er_instance(std::size_t n, double p, std::size_t s,
                            std::vector<std::string>* warnings) {
  if (!(p >= 0.0 && p <= 1.0)) throw DataError("edge probability must lie in [0, 1]");
  if (s == 0) throw DataError("the offline side needs at least one vertex");
  if (warnings) {
    if (static_cast<double>(s) > p * static_cast<double>(n)) {
      std::ostringstream os;
      os << "s = " << s << " exceeds p n = " << p * static_cast<double>(n);
      warnings->push_back(os.str());
    }
    if (n > 0 && p >= 1.0 / std::sqrt(static_cast<double>(n))) {
      std::ostringstream os;
      os << "p = " << p << " is not below n^{-1/2} = " << 1.0 / std::sqrt(static_cast<double>(n));
      warnings->push_back(os.str());
    }
  }
  std::vector<std::string> offline;
  offline.reserve(s);
  for (std::size_t u = 0; u < s; ++u) offline.push_back("u" + std::to_string(u));
  std::vector<OnlineVertex> online;
  online.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    OnlineVertex v;
    v.id = "v" + std::to_string(j);
    v.constraint = ProbingConstraint::patience(1);
    v.edges.reserve(s);
    for (std::size_t u = 0; u < s; ++u) v.edges.push_back({static_cast<OfflineIndex>(u), 1.0, p});
    online.push_back(std::move(v));
  }
  return StochasticGraph(std::move(offline), std::move(online));
}

std::size_t er_adaptive_greedy_trial(const StochasticGraph& g, std::uint64_t seed,
                                     std::uint64_t trial) {
  EdgeStates states(seed, trial);
  std::vector<bool> taken(g.offline_count(), false);
  std::size_t matched = 0;
  std::size_t next_free = 0;  // offline vertices are taken in index order
  for (std::size_t j = 0; j < g.online_count() && matched < g.offline_count(); ++j) {
    const OnlineVertex& v = g.online(j);
    while (next_free < g.offline_count() && taken[next_free]) ++next_free;
    const auto e = v.edge_to(static_cast<OfflineIndex>(next_free));
    if (!e) continue;
    if (states.probe(j, *e, v.edges[*e].probability)) {
      taken[next_free] = true;
      ++matched;
    }
  }
  return matched;
}

std::size_t er_balanced_trial(const StochasticGraph& g, std::uint64_t seed, std::uint64_t trial) {
  EdgeStates states(seed, trial);
  const std::size_t s = g.offline_count();
  std::vector<bool> taken(s, false);
  std::size_t matched = 0;
  for (std::size_t j = 0; j < g.online_count(); ++j) {
    const auto u = static_cast<OfflineIndex>(j % s);
    if (taken[u]) continue;
    const OnlineVertex& v = g.online(j);
    const auto e = v.edge_to(u);
    if (e && states.probe(j, *e, v.edges[*e].probability)) {
      taken[u] = true;
      ++matched;
    }
  }
  return matched;
}

double er_balanced_value(std::size_t n, double p, std::size_t s) {
  double total = 0.0;
  for (std::size_t u = 0; u < s; ++u) {
    const std::size_t count = n / s + (u < n % s ? 1 : 0);
    total += 1.0 - std::pow(1.0 - p, static_cast<double>(count));
  }
  return total;
}

double expected_min_binomial(std::size_t n, double p, std::size_t s) {
  // E[min(X, s)] = s - sum_{k<s} (s - k) P[X = k].
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return static_cast<double>(std::min(n, s));
  double shortfall = 0.0;
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k < s && k <= n; ++k) {
    const double dk = static_cast<double>(k);
    const double log_pmf = std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0) +
                           dk * std::log(p) + (dn - dk) * std::log1p(-p);
    shortfall += static_cast<double>(s - k) * std::exp(log_pmf);
  }
  return static_cast<double>(s) - shortfall;
}

namespace {

void mean_stderr(const std::vector<std::size_t>& xs, double& mean, double& se) {
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (auto x : xs) sum += static_cast<double>(x);
  mean = sum / n;
  double ss = 0.0;
  for (auto x : xs) ss += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
  se = xs.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
}

}  // namespace

ErSummary run_er_experiment(std::size_t n, double p, std::size_t s, std::size_t trials,
                            std::uint64_t seed, std::size_t threads) {
  if (trials == 0) throw DataError("trial count must be at least 1");
  const StochasticGraph g = er_instance(n, p, s);
  ErSummary out;
  out.trials = trials;
  out.adaptive_sizes.resize(trials);
  out.nonadaptive_sizes.resize(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    out.adaptive_sizes[t] = er_adaptive_greedy_trial(g, seed, t);
    out.nonadaptive_sizes[t] = er_balanced_trial(g, seed, t);
  });
  mean_stderr(out.adaptive_sizes, out.adaptive_mean, out.adaptive_stderr);
  mean_stderr(out.nonadaptive_sizes, out.nonadaptive_mean, out.nonadaptive_stderr);
  out.balanced_closed_form = er_balanced_value(n, p, s);
  out.min_binomial = expected_min_binomial(n, p, s);
  out.ratio = out.adaptive_mean > 0.0 ? out.nonadaptive_mean / out.adaptive_mean : 0.0;
  return out;
}

}  // namespace probematch::oracles
