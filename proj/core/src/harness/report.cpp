#include "probematch/harness/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "probematch/errors.hpp"
#include "probematch/parallel.hpp"

namespace probematch::harness {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double per_trial_weight_bound(const KnownIDInput& in) {
  double total = 0.0;
  for (const auto& row : in.distributions) {
    double best = 0.0;
    for (const auto& tm : row) {
      for (const auto& e : in.type_graph.online(tm.type).edges) best = std::max(best, e.weight);
    }
    total += best;
  }
  return total;
}

TrialReport simulate(const probing::OnlinePlan& plan, probing::Algorithm alg,
                     const ArrivalModel& arrivals, const SimulationOptions& opts) {
  if (opts.trials == 0) throw DataError("trial count must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const KnownIDInput& in = plan.input();

  struct Slot {
    double weight = 0.0;
    std::size_t probes = 0;
    std::vector<probing::MatchedEdge> matching;
  };
  std::vector<Slot> slots(opts.trials);
  parallel_for(opts.trials, opts.threads, [&](std::size_t t) {
    probing::TrialResult r = probing::run_trial(plan, alg, arrivals, opts.seed, t);
    if (opts.audit) {
      const auto violations = probing::audit_trial(plan, r, opts.seed, t);
      if (!violations.empty()) {
        throw Error("probe-commit audit failed in trial " + std::to_string(t) + ": " +
                    violations.front());
      }
    }
    slots[t] = {r.weight, r.probes, std::move(r.matching)};
  });

  TrialReport rep;
  rep.trials = opts.trials;
  rep.seed = opts.seed;
  const double n = static_cast<double>(opts.trials);
  std::map<std::tuple<std::size_t, OnlineIndex, EdgeIndex>, std::size_t> counts;
  double sum = 0.0;
  double probes = 0.0;
  rep.weights.reserve(opts.trials);
  for (const auto& s : slots) {
    rep.weights.push_back(s.weight);
    sum += s.weight;
    probes += static_cast<double>(s.probes);
    for (const auto& m : s.matching) ++counts[{m.arrival, m.type, m.edge}];
  }
  rep.mean = sum / n;
  rep.mean_probes = probes / n;
  double ss = 0.0;
  for (double w : rep.weights) ss += (w - rep.mean) * (w - rep.mean);
  rep.std_error = opts.trials > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  rep.ci_low = rep.mean - 1.959963984540054 * rep.std_error;
  rep.ci_high = rep.mean + 1.959963984540054 * rep.std_error;
  rep.hoeffding = per_trial_weight_bound(in) * std::sqrt(std::log(2.0 / 0.05) / (2.0 * n));
  rep.lpopt = plan.lp_objective();
  if (*rep.lpopt > 0.0) rep.ratio = rep.mean / *rep.lpopt;

  const bool point = in.is_point_mass();
  for (const auto& grp : lp::config_groups(in)) {
    const OnlineVertex& v = in.type_graph.online(grp.type);
    const std::string online = point ? v.id : std::to_string(grp.arrival) + ":" + v.id;
    for (EdgeIndex e = 0; e < v.degree(); ++e) {
      const auto it = counts.find({grp.arrival, grp.type, e});
      const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
      rep.edges.push_back({in.type_graph.offline_id(v.edges[e].offline), online, c / n});
    }
  }
  rep.echo = {{"algorithm", probing::algorithm_name(alg)}};
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_csv(const TrialReport& r) {
  std::ostringstream os;
  os << "metric,offline,online,value\n";
  for (const auto& [k, v] : r.echo) os << "config." << csv_field(k) << ",,," << csv_field(v) << '\n';
  os << "seed,,," << r.seed << '\n';
  os << "trials,,," << r.trials << '\n';
  os << "mean_weight,,," << format_double(r.mean) << '\n';
  os << "stderr,,," << format_double(r.std_error) << '\n';
  os << "ci95_low,,," << format_double(r.ci_low) << '\n';
  os << "ci95_high,,," << format_double(r.ci_high) << '\n';
  os << "hoeffding95_halfwidth,,," << format_double(r.hoeffding) << '\n';
  os << "band3_low,,," << format_double(r.band_low()) << '\n';
  os << "band3_high,,," << format_double(r.band_high()) << '\n';
  os << "mean_probes,,," << format_double(r.mean_probes) << '\n';
  if (r.lpopt) os << "lpopt,,," << format_double(*r.lpopt) << '\n';
  if (r.ratio) os << "ratio,,," << format_double(*r.ratio) << '\n';
  for (const auto& e : r.edges) {
    os << "edge_match_frequency," << csv_field(e.offline) << ',' << csv_field(e.online) << ','
       << format_double(e.frequency) << '\n';
  }
  return os.str();
}

std::string er_summary_csv(const oracles::ErSummary& s, std::size_t n, double p, std::size_t offline,
                           std::uint64_t seed) {
  std::ostringstream os;
  os << "metric,offline,online,value\n";
  os << "config.n,,," << n << '\n';
  os << "config.p,,," << format_double(p) << '\n';
  os << "config.s,,," << offline << '\n';
  os << "seed,,," << seed << '\n';
  os << "trials,,," << s.trials << '\n';
  os << "adaptive_mean,,," << format_double(s.adaptive_mean) << '\n';
  os << "adaptive_stderr,,," << format_double(s.adaptive_stderr) << '\n';
  os << "nonadaptive_mean,,," << format_double(s.nonadaptive_mean) << '\n';
  os << "nonadaptive_stderr,,," << format_double(s.nonadaptive_stderr) << '\n';
  os << "nonadaptive_closed_form,,," << format_double(s.balanced_closed_form) << '\n';
  os << "expected_min_binomial,,," << format_double(s.min_binomial) << '\n';
  os << "ratio,,," << format_double(s.ratio) << '\n';
  for (std::size_t t = 0; t < s.trials; ++t) {
    os << "adaptive_size,," << t << ',' << s.adaptive_sizes[t] << '\n';
    os << "nonadaptive_size,," << t << ',' << s.nonadaptive_sizes[t] << '\n';
  }
  return os.str();
}

}  // namespace probematch::harness
