#include "probematch/harness/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "probematch/errors.hpp"
#include "probematch/harness/report.hpp"
#include "probematch/harness/suites.hpp"
#include "probematch/io.hpp"
#include "probematch/lp/config_lp.hpp"
#include "probematch/lp/demand_oracle.hpp"
#include "probematch/lp/edge_lps.hpp"
#include "probematch/oracles/bruteforce.hpp"
#include "probematch/oracles/erdos_renyi.hpp"
#include "probematch/probing/crs.hpp"
#include "probematch/probing/online.hpp"
#include "probematch/probing/vertex_probe.hpp"
#include "probematch/probing/vertex_round.hpp"
#include "probematch/rng.hpp"
#include "probematch/sampling.hpp"

namespace probematch::harness {

namespace {

const double kOneMinusInvE = 1.0 - std::exp(-1.0);

std::string fmt(double x, int prec = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

std::string suite_spec(const char* name, std::size_t count, std::uint64_t seed) {
  return std::string(name) + "(" + std::to_string(count) + "," + std::to_string(seed) + ")";
}

// Binomial 3-sigma check; a zero-variance target must be hit exactly.
bool within_3sigma(double freq, double target, double n) {
  const double sigma = std::sqrt(std::max(0.0, target * (1.0 - target)) / n);
  return std::abs(freq - target) <= 3.0 * sigma + 1e-12;
}

struct Outcome {
  bool passed = true;
  std::ostringstream detail;
};

Outcome c1_relaxation(const AcceptanceOptions& o) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  double worst = -1e300;
  std::size_t bad = 0;
  const auto suite = generate_suite(suite_spec("random-small", 50, o.seed));
  for (const auto& inst : suite) {
    const auto& g = inst.input.type_graph;
    const double opt = oracles::adaptive_opt_bruteforce(g);
    const double lpopt = lp::solve_lp_config(g).objective;
    worst = std::max(worst, opt - lpopt);
    if (opt > lpopt + 1e-9) ++bad;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.passed = bad == 0 && secs <= 120.0;
  out.detail << suite.size() << " instances, max(OPT - LPOPT) = " << fmt(worst) << ", violations "
             << bad << ", " << fmt(secs, 3) << " s (limit 120 s)";
  return out;
}

Outcome c2_exactness(const AcceptanceOptions& o) {
  Outcome out;
  double worst_val = 0.0;
  double worst_probe = 0.0;
  const auto suite = generate_suite(suite_spec("random-small", 50, o.seed));
  for (const auto& inst : suite) {
    const auto sol = lp::solve_lp_config(inst.input);
    worst_val = std::max(worst_val, std::abs(lp::relaxed_value(inst.input, sol) - sol.objective));
    const probing::OnlinePlan plan(inst.input, sol);
    double analytic = 0.0;
    for (const auto& row : plan.commit_weight()) {
      for (double w : row) analytic += w;
    }
    worst_probe = std::max(worst_probe, std::abs(analytic - sol.objective));
  }
  out.passed = worst_val <= 1e-9 && worst_probe <= 1e-9;
  out.detail << suite.size() << " instances, max |sum val*x - LPOPT| = " << fmt(worst_val)
             << ", max |VertexProbe expected weight - LPOPT| = " << fmt(worst_probe);
  return out;
}

OnlineVertex random_oracle_vertex(CounterRng& rng) {
  OnlineVertex v;
  v.id = "q";
  const std::size_t d = 1 + rng.below(5);
  for (std::size_t k = 0; k < d; ++k) {
    v.edges.push_back({static_cast<OfflineIndex>(k), 1.0 - rng.uniform(), 1.0 - rng.uniform()});
  }
  switch (rng.below(4)) {
    case 0:
      v.constraint = ProbingConstraint::patience(rng.below(4));
      break;
    case 1:
      v.constraint = ProbingConstraint::unbounded();
      break;
    case 2: {
      Budget b;
      b.budget = 0.3 + rng.uniform();
      for (std::size_t k = 0; k < d; ++k) b.costs.push_back(rng.bernoulli(0.2) ? 0.0 : 0.1 + 0.6 * rng.uniform());
      v.constraint = b;
      break;
    }
    default: {
      Explicit ex;
      const std::size_t gens = 1 + rng.below(3);
      for (std::size_t k = 0; k < gens; ++k) {
        ProbeString s;
        for (EdgeIndex e = 0; e < d; ++e) {
          if (rng.bernoulli(0.5)) s.push_back(e);
        }
        ex.strings.insert(s);
      }
      canonicalize(ex);
      v.constraint = ex;
      break;
    }
  }
  return v;
}

Outcome c3_colgen(const AcceptanceOptions& o) {
  Outcome out;
  double worst = 0.0;
  const auto suite = generate_suite(suite_spec("random-small", 50, o.seed));
  lp::ConfigLPOptions cg;
  cg.method = lp::LPMethod::kColumnGeneration;
  for (const auto& inst : suite) {
    const double a = lp::solve_lp_config(inst.input).objective;
    const double b = lp::solve_lp_config(inst.input, cg).objective;
    worst = std::max(worst, std::abs(a - b));
  }
  CounterRng rng(derive_key({o.seed, 3, static_cast<std::uint64_t>(Stream::kGenerator)}));
  double worst_oracle = 0.0;
  std::size_t bad_string = 0;
  const std::size_t queries = 200;
  for (std::size_t q = 0; q < queries; ++q) {
    const OnlineVertex v = random_oracle_vertex(rng);
    std::vector<double> alpha(v.degree());
    for (auto& a : alpha) a = rng.uniform();
    const auto adj = lp::adjusted_weights(v, alpha);
    const auto res = lp::demand_oracle(v, adj);
    double brute = 0.0;
    for (const auto& s : enumerate_strings(v.constraint, v.degree(), 100000)) {
      brute = std::max(brute, lp::val_with(v, s, adj));
    }
    worst_oracle = std::max(worst_oracle, std::abs(res.value - brute));
    if (!membership(v.constraint, res.string) ||
        std::abs(lp::val_with(v, res.string, adj) - res.value) > 1e-12) {
      ++bad_string;
    }
  }
  out.passed = worst <= 1e-7 && worst_oracle <= 1e-9 && bad_string == 0;
  out.detail << suite.size() << " instances, max |colgen - enumerate| = " << fmt(worst) << "; "
             << queries << " pricing queries, max |DP - brute force| = " << fmt(worst_oracle)
             << ", inconsistent strings " << bad_string;
  return out;
}

StochasticGraph fixed_3x3(std::uint64_t seed) {
  CounterRng rng(derive_key({seed, 4, static_cast<std::uint64_t>(Stream::kGenerator)}));
  StochasticGraph g({"u0", "u1", "u2"}, {});
  for (std::size_t v = 0; v < 3; ++v) {
    OnlineVertex ov;
    ov.id = "v" + std::to_string(v);
    ov.constraint = ProbingConstraint::patience(2);
    for (std::size_t u = 0; u < 3; ++u) {
      ov.edges.push_back({static_cast<OfflineIndex>(u), 0.2 + 0.8 * rng.uniform(), 0.2 + 0.6 * rng.uniform()});
    }
    g.add_online(std::move(ov));
  }
  return g;
}

KnownIDInput two_type_input(std::uint64_t seed) {
  CounterRng rng(derive_key({seed, 5, static_cast<std::uint64_t>(Stream::kGenerator)}));
  KnownIDInput in;
  in.type_graph = StochasticGraph({"u0", "u1", "u2"}, {});
  for (std::size_t b = 0; b < 2; ++b) {
    OnlineVertex ov;
    ov.id = "b" + std::to_string(b);
    ov.constraint = ProbingConstraint::patience(1 + b);
    for (std::size_t u = 0; u < 3; ++u) {
      ov.edges.push_back({static_cast<OfflineIndex>(u), 0.2 + 0.8 * rng.uniform(), 0.2 + 0.6 * rng.uniform()});
    }
    in.type_graph.add_online(std::move(ov));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const double r = 0.2 + 0.6 * rng.uniform();
    in.distributions.push_back({{0, r}, {1, 1.0 - r}});
  }
  in.normalize_rows();
  return in;
}

Outcome c4_marginals(const AcceptanceOptions& o) {
  Outcome out;
  const std::size_t trials = o.mc_trials;
  const double n = static_cast<double>(trials);
  {
    const KnownIDInput in = KnownIDInput::from_graph(fixed_3x3(o.seed));
    const auto sol = lp::solve_lp_config(in);
    const auto xt = lp::induced_edge_variables(in, sol);
    std::vector<probing::StringDistribution> dists;
    for (const auto& gs : sol.groups) dists.emplace_back(gs.strings, gs.group.mass);
    std::vector<std::vector<double>> commits(3, std::vector<double>(3, 0.0));
    for (std::size_t t = 0; t < trials; ++t) {
      EdgeStates states(o.seed, t);
      const std::uint64_t key = CounterRng(o.seed, t, Stream::kStrings).key();
      for (std::size_t v = 0; v < 3; ++v) {
        const auto ev = probing::vertex_probe(in.type_graph.online(v), v, dists[v],
                                              to_unit(CounterRng::at(key, v)), states);
        if (ev.edge) commits[v][*ev.edge] += 1.0;
      }
    }
    std::size_t bad = 0;
    double worst = 0.0;
    for (std::size_t v = 0; v < 3; ++v) {
      for (std::size_t e = 0; e < 3; ++e) {
        const double target = in.type_graph.online(v).edges[e].probability * xt[v][e];
        const double freq = commits[v][e] / n;
        const double sigma = std::sqrt(target * (1.0 - target) / n);
        if (sigma > 0) worst = std::max(worst, std::abs(freq - target) / sigma);
        if (!within_3sigma(freq, target, n)) ++bad;
      }
    }
    out.passed = bad == 0;
    out.detail << "3x3 graph: 9 edges, max deviation " << fmt(worst, 3) << " sigma, outside 3 sigma "
               << bad;
  }
  {
    const KnownIDInput in = two_type_input(o.seed);
    const auto sol = lp::solve_lp_config(in);
    const probing::OnlinePlan plan(in, sol);
    const auto target = lp::conditional_commit_probabilities(in, sol);
    const auto groups = lp::config_groups(in);
    std::map<std::pair<std::size_t, OnlineIndex>, std::size_t> group_of;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) group_of[{groups[gi].arrival, groups[gi].type}] = gi;
    std::vector<double> seen(groups.size(), 0.0);
    std::vector<std::vector<double>> commits(groups.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi) commits[gi].assign(target[gi].size(), 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto types = sample_types(in, o.seed, t);
      EdgeStates states(o.seed, t);
      const std::uint64_t key = CounterRng(o.seed, t, Stream::kStrings).key();
      for (std::size_t i = 0; i < in.arrivals(); ++i) {
        const std::size_t gi = group_of.at({i, types[i]});
        seen[gi] += 1.0;
        const auto ev = probing::vertex_probe(in.type_graph.online(types[i]), i,
                                              plan.strings(i, types[i]),
                                              to_unit(CounterRng::at(key, i)), states);
        if (ev.edge) commits[gi][*ev.edge] += 1.0;
      }
    }
    std::size_t bad = 0;
    std::size_t checks = 0;
    double worst = 0.0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      for (std::size_t e = 0; e < target[gi].size(); ++e) {
        const double freq = commits[gi][e] / seen[gi];
        const double sigma = std::sqrt(target[gi][e] * (1.0 - target[gi][e]) / seen[gi]);
        if (sigma > 0) worst = std::max(worst, std::abs(freq - target[gi][e]) / sigma);
        if (!within_3sigma(freq, target[gi][e], seen[gi])) ++bad;
        ++checks;
      }
    }
    out.passed = out.passed && bad == 0;
    out.detail << "; 2-type n=3 input: " << checks << " conditional marginals, max deviation "
               << fmt(worst, 3) << " sigma, outside 3 sigma " << bad;
  }
  return out;
}

probing::YSystem random_y_system(CounterRng& rng, std::size_t degree, std::size_t patience) {
  probing::YSystem y;
  y[ProbeString{}] = 1.0;
  std::vector<ProbeString> frontier{ProbeString{}};
  while (!frontier.empty()) {
    std::vector<ProbeString> next;
    for (const auto& parent : frontier) {
      if (parent.size() == patience) continue;
      std::vector<std::pair<ProbeString, double>> kids;
      double total = 0.0;
      for (EdgeIndex e = 0; e < degree; ++e) {
        if (parent.contains(e) || rng.bernoulli(0.3)) continue;
        const double w = 1.0 - rng.uniform();
        kids.push_back({parent.extended(e), w});
        total += w;
      }
      if (kids.empty()) continue;
      const double budget = y.at(parent) * (0.5 + 0.5 * rng.uniform());
      for (auto& [s, w] : kids) {
        y[s] = budget * w / total;
        next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  return y;
}

Outcome c5_vertex_round(const AcceptanceOptions& o) {
  Outcome out;
  const std::size_t draws = o.mc_trials;
  const double n = static_cast<double>(draws);
  std::size_t checks = 0;
  std::size_t bad = 0;
  std::size_t off_support = 0;
  double worst = 0.0;
  for (std::size_t sys = 0; sys < 10; ++sys) {
    CounterRng gen(derive_key({o.seed, 6, sys, static_cast<std::uint64_t>(Stream::kGenerator)}));
    const std::size_t degree = 2 + gen.below(3);
    const std::size_t patience = 1 + gen.below(2);
    const auto c = ProbingConstraint::patience(patience);
    const auto y = random_y_system(gen, degree, patience);
    probing::validate_y(c, y);
    std::map<ProbeString, double> hits;
    CounterRng rng(o.seed, sys, Stream::kRounding);
    for (std::size_t d = 0; d < draws; ++d) {
      const ProbeString s = probing::vertex_round(y, rng);
      if (!membership(c, s)) ++off_support;
      for (std::size_t k = 1; k <= s.size(); ++k) hits[s.prefix(k)] += 1.0;
    }
    for (const auto& [s, target] : y) {
      if (s.empty() || target <= 0.0) continue;
      const double freq = hits[s] / n;
      const double sigma = std::sqrt(target * (1.0 - target) / n);
      if (sigma > 0) worst = std::max(worst, std::abs(freq - target) / sigma);
      if (!within_3sigma(freq, target, n)) ++bad;
      ++checks;
    }
  }
  out.passed = bad == 0 && off_support == 0;
  out.detail << "10 y-systems, " << checks << " prefixes, max deviation " << fmt(worst, 3)
             << " sigma, outside 3 sigma " << bad << ", draws outside the constraint " << off_support;
  return out;
}

// Every ordered z-tuple on the 0.1 grid, evaluated in arrival order 0..k-1.
// Since the tuples are ordered, this visits every (z multiset, order) pair.
void grid_tuples(std::size_t k, std::size_t units_left, std::vector<double>& z,
                 const std::function<void(const std::vector<double>&)>& visit) {
  if (z.size() == k) {
    visit(z);
    return;
  }
  for (std::size_t u = 0; u <= units_left; ++u) {
    z.push_back(static_cast<double>(u) / 10.0);
    grid_tuples(k, units_left - u, z, visit);
    z.pop_back();
  }
}

Outcome c6_selectability(const AcceptanceOptions&) {
  Outcome out;
  double min_sel = 1.0;
  std::size_t configs = 0;
  std::size_t permuted = 0;
  for (std::size_t k = 1; k <= 6; ++k) {
    std::vector<double> z;
    std::vector<std::size_t> identity(k);
    for (std::size_t i = 0; i < k; ++i) identity[i] = i;
    grid_tuples(k, 10, z, [&](const std::vector<double>& zs) {
      ++configs;
      for (double s : probing::ocrs_exact_selectability(zs, identity)) min_sel = std::min(min_sel, s);
      if (k <= 4) {
        std::vector<std::size_t> order = identity;
        while (std::next_permutation(order.begin(), order.end())) {
          ++permuted;
          for (double s : probing::ocrs_exact_selectability(zs, order)) min_sel = std::min(min_sel, s);
        }
      }
    });
  }
  out.passed = min_sel >= 0.5 - 1e-12;
  out.detail << configs << " ordered grid tuples (k <= 6) plus " << permuted
             << " explicit reorderings (k <= 4), min selectability = " << fmt(min_sel, 15);
  return out;
}

struct GuaranteeRun {
  std::size_t bad = 0;
  double worst_margin = 1e300;  // (mean + 3 se) - factor * LPOPT
  double min_ratio = 1e300;
};

void check_guarantee(GuaranteeRun& acc, const TrialReport& rep, double lpopt, double factor) {
  const double margin = rep.mean + 3.0 * rep.std_error - factor * lpopt;
  acc.worst_margin = std::min(acc.worst_margin, margin);
  if (lpopt > 0.0) acc.min_ratio = std::min(acc.min_ratio, rep.mean / lpopt);
  if (margin < 0.0) ++acc.bad;
}

Outcome c7_adversarial(const AcceptanceOptions& o) {
  Outcome out;
  GuaranteeRun acc;
  const auto suite = generate_suite(suite_spec("random-id", 20, o.seed));
  for (const auto& inst : suite) {
    const auto sol = lp::solve_lp_config(inst.input);
    const probing::OnlinePlan plan(inst.input, sol);
    const auto order = probing::worst_found_order(plan, probing::Algorithm::kOcrs);
    SimulationOptions so{o.mc_trials, o.seed, o.threads, true};
    const auto rep = simulate(plan, probing::Algorithm::kOcrs, ArrivalModel::adversarial(order), so);
    check_guarantee(acc, rep, sol.objective, 0.5);
  }
  out.passed = acc.bad == 0;
  out.detail << suite.size() << " known i.d. inputs, worst-found orders, " << o.mc_trials
             << " trials each: min mean/LPOPT = " << fmt(acc.min_ratio)
             << ", min (mean + 3se - LPOPT/2) = " << fmt(acc.worst_margin) << ", failures " << acc.bad;
  return out;
}

Outcome c8_random_order(const AcceptanceOptions& o) {
  Outcome out;
  GuaranteeRun id_acc;
  GuaranteeRun graph_acc;
  SimulationOptions so{o.mc_trials, o.seed, o.threads, true};
  const auto suite = generate_suite(suite_spec("random-id", 20, o.seed));
  for (const auto& inst : suite) {
    const auto sol = lp::solve_lp_config(inst.input);
    const probing::OnlinePlan plan(inst.input, sol);
    const auto rep = simulate(plan, probing::Algorithm::kRcrs, ArrivalModel::random_times(), so);
    check_guarantee(id_acc, rep, sol.objective, kOneMinusInvE);
  }
  const auto graphs = generate_suite(suite_spec("random-small", 10, o.seed));
  for (const auto& inst : graphs) {
    const auto sol = lp::solve_lp_config(inst.input);
    const probing::OnlinePlan plan(inst.input, sol);
    const auto rep = simulate(plan, probing::Algorithm::kRcrs, ArrivalModel::random_times(), so);
    check_guarantee(graph_acc, rep, sol.objective, kOneMinusInvE);
  }
  out.passed = id_acc.bad == 0 && graph_acc.bad == 0;
  out.detail << suite.size() << " known i.d. inputs: min mean/LPOPT = " << fmt(id_acc.min_ratio)
             << ", failures " << id_acc.bad << "; " << graphs.size()
             << " known graphs: min mean/LPOPT = " << fmt(graph_acc.min_ratio) << ", failures "
             << graph_acc.bad << " (target 1 - 1/e = " << fmt(kOneMinusInvE) << ")";
  return out;
}

Outcome c9_iid_greedy(const AcceptanceOptions& o) {
  Outcome out;
  GuaranteeRun acc;
  SimulationOptions so{o.mc_trials, o.seed, o.threads, true};
  const auto suite = generate_suite(suite_spec("random-iid", 10, o.seed));
  for (const auto& inst : suite) {
    const auto sol = lp::solve_lp_config(inst.input);
    const probing::OnlinePlan plan(inst.input, sol);
    const auto rep = simulate(plan, probing::Algorithm::kGreedy, ArrivalModel::random_order(), so);
    check_guarantee(acc, rep, sol.objective, kOneMinusInvE);
  }
  out.passed = acc.bad == 0;
  out.detail << suite.size() << " i.i.d. inputs: min mean/LPOPT = " << fmt(acc.min_ratio)
             << ", min (mean + 3se - (1 - 1/e) LPOPT) = " << fmt(acc.worst_margin) << ", failures "
             << acc.bad;
  return out;
}

Outcome c10_adaptivity_gap(const AcceptanceOptions& o) {
  Outcome out;
  const std::size_t n = 10000;
  const double p = 0.001;
  const std::size_t s = 10;
  const auto start = std::chrono::steady_clock::now();
  const auto sum = oracles::run_er_experiment(n, p, s, 200, o.seed, o.threads);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double ds = static_cast<double>(s);
  const bool adaptive_ok = sum.adaptive_mean >= 0.9 * ds;
  const double lo = (kOneMinusInvE - 0.02) * ds * (1.0 - 0.03);
  const double hi = (kOneMinusInvE + 0.02) * ds * (1.0 + 0.03);
  const bool closed_ok = sum.balanced_closed_form >= lo && sum.balanced_closed_form <= hi;
  const bool ratio_ok = sum.ratio >= 0.58 && sum.ratio <= 0.72;
  const bool time_ok = secs <= 300.0;
  out.passed = adaptive_ok && closed_ok && ratio_ok && time_ok;
  out.detail << "adaptive greedy mean " << fmt(sum.adaptive_mean) << " (need >= " << fmt(0.9 * ds)
             << (adaptive_ok ? ", ok" : ", FAIL") << "; E[min(Bin(n,p), s)] = "
             << fmt(sum.min_binomial) << " caps any policy); balanced closed form "
             << fmt(sum.balanced_closed_form) << " in [" << fmt(lo) << ", " << fmt(hi) << "]"
             << (closed_ok ? " ok" : " FAIL") << "; balanced MC mean " << fmt(sum.nonadaptive_mean)
             << "; ratio " << fmt(sum.ratio) << " in [0.58, 0.72]" << (ratio_ok ? " ok" : " FAIL")
             << "; " << fmt(secs, 3) << " s (limit 300 s)";
  return out;
}

Outcome c11_lp_equivalence(const AcceptanceOptions& o) {
  Outcome out;
  double worst_qc = 0.0;
  const auto suite = generate_suite(suite_spec("unbounded-patience", 20, o.seed));
  for (const auto& inst : suite) {
    const auto& g = inst.input.type_graph;
    const double qc = lp::solve_edge_lp(g, lp::build_lp_qc(g)).objective;
    const double cfg = lp::solve_lp_config(g).objective;
    worst_qc = std::max(worst_qc, std::abs(qc - cfg));
  }
  std::size_t std_bad = 0;
  std::size_t strict = 0;
  double min_gap = 1e300;
  const auto patience = generate_suite(suite_spec("random-small", 50, o.seed));
  for (const auto& inst : patience) {
    const auto& g = inst.input.type_graph;
    const double st = lp::solve_edge_lp(g, lp::build_lp_std(g)).objective;
    const double cfg = lp::solve_lp_config(g).objective;
    min_gap = std::min(min_gap, st - cfg);
    if (st < cfg - 1e-9) ++std_bad;
    if (st > cfg + 1e-7) ++strict;
  }
  out.passed = worst_qc <= 1e-6 && std_bad == 0;
  out.detail << suite.size() << " unbounded-patience instances, max |LPOPT_QC - LPOPT| = "
             << fmt(worst_qc) << "; " << patience.size()
             << " patience instances, min (LPOPT_std - LPOPT) = " << fmt(min_gap) << ", violations "
             << std_bad << ", strictly weaker on " << strict;
  return out;
}

Outcome c12_star(const AcceptanceOptions&) {
  Outcome out;
  for (std::size_t k = 2; k <= 4; ++k) {
    const double lpopt = lp::solve_lp_config(star_graph(k, 1)).objective;
    const double adaptive = oracles::adaptive_opt_bruteforce(star_graph(k, kUnboundedPatience));
    const double dk = static_cast<double>(k);
    const double expect = 1.0 - std::pow(1.0 - 1.0 / dk, dk);
    const bool ok = std::abs(lpopt - 1.0 / dk) <= 1e-9 && std::abs(adaptive - expect) <= 1e-9;
    out.passed = out.passed && ok;
    out.detail << (k > 2 ? "; " : "") << "k=" << k << ": LPOPT " << fmt(lpopt, 12) << " vs "
               << fmt(1.0 / dk, 12) << ", unbounded adaptive " << fmt(adaptive, 12) << " vs "
               << fmt(expect, 12);
  }
  return out;
}

// Everything the suite emits, as text, for a byte-level comparison.
std::string battery_transcript(const AcceptanceOptions& o, std::size_t threads) {
  std::string out;
  for (const std::string spec : {"star(3)", "random-small(5,1)", "unbounded-patience(5,2)",
                                 "random-id(5,3)", "random-iid(5,4)"}) {
    for (const auto& inst : generate_suite(spec)) out += io::dump_input(inst.input);
  }
  for (const auto& inst : generate_suite(suite_spec("random-id", 3, o.seed))) {
    const auto sol = lp::solve_lp_config(inst.input);
    out += io::dump_solution(inst.input, sol, "config-id");
    const probing::OnlinePlan plan(inst.input, sol);
    SimulationOptions so{2000, o.seed, threads, true};
    for (auto alg : {probing::Algorithm::kGreedy, probing::Algorithm::kOcrs, probing::Algorithm::kRcrs}) {
      const ArrivalModel am = alg == probing::Algorithm::kOcrs
                                  ? ArrivalModel::adversarial(probing::worst_found_order(plan, alg))
                                  : ArrivalModel::random_times();
      out += report_csv(simulate(plan, alg, am, so));
    }
  }
  const auto er = oracles::run_er_experiment(2000, 0.005, 5, 20, o.seed, threads);
  for (std::size_t t = 0; t < er.trials; ++t) {
    out += std::to_string(er.adaptive_sizes[t]) + "," + std::to_string(er.nonadaptive_sizes[t]) + "\n";
  }
  return out;
}

Outcome c13_determinism(const AcceptanceOptions& o) {
  Outcome out;
  const std::string a = battery_transcript(o, 1);
  const std::string b = battery_transcript(o, 4);
  const std::string c = battery_transcript(o, 1);
  out.passed = a == b && a == c;
  out.detail << "three reruns (1, 4, 1 workers) of a " << a.size() << "-byte transcript: "
             << (out.passed ? "identical" : "DIFFERENT");
  return out;
}

}  // namespace

std::string criterion_title(int id) {
  static const char* titles[] = {"",
                                 "relaxation",
                                 "LP exactness",
                                 "column generation",
                                 "VertexProbe marginals",
                                 "VertexRound law",
                                 "OCRS selectability",
                                 "adversarial guarantee",
                                 "random-order guarantee",
                                 "i.i.d. greedy",
                                 "adaptivity gap",
                                 "LP equivalence",
                                 "single-vertex family",
                                 "determinism"};
  return id >= 1 && id <= kCriterionCount ? titles[id] : "unknown";
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o;
    switch (id) {
      case 1: o = c1_relaxation(opts); break;
      case 2: o = c2_exactness(opts); break;
      case 3: o = c3_colgen(opts); break;
      case 4: o = c4_marginals(opts); break;
      case 5: o = c5_vertex_round(opts); break;
      case 6: o = c6_selectability(opts); break;
      case 7: o = c7_adversarial(opts); break;
      case 8: o = c8_random_order(opts); break;
      case 9: o = c9_iid_greedy(opts); break;
      case 10: o = c10_adaptivity_gap(opts); break;
      case 11: o = c11_lp_equivalence(opts); break;
      case 12: o = c12_star(opts); break;
      case 13: o = c13_determinism(opts); break;
      default: throw DataError("no criterion " + std::to_string(id));
    }
    r.passed = o.passed;
    r.detail = o.detail.str();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance_suite(const AcceptanceOptions& opts,
                                                  const std::vector<int>& ids) {
  std::vector<int> todo = ids;
  if (todo.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
  }
  std::vector<CriterionResult> out;
  for (int id : todo) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format_result_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%s %2d ", r.passed ? "PASS" : "FAIL", r.id);
  return std::string(head) + r.title + ": " + r.detail;
}

}  // namespace probematch::harness
