#include "probematch/lp/config_lp.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "probematch/errors.hpp"
#include "probematch/lp/demand_oracle.hpp"

namespace probematch::lp {

double g_value(const OnlineVertex& v, std::span<const EdgeIndex> s) {
  double g = 1.0;
  for (EdgeIndex e : s) g *= 1.0 - v.edges.at(e).probability;
  return g;
}

double val_with(const OnlineVertex& v, const ProbeString& s, std::span<const double> weights) {
  double total = 0.0;
  double g = 1.0;
  for (EdgeIndex e : s) {
    const double p = v.edges.at(e).probability;
    total += p * weights[e] * g;
    g *= 1.0 - p;
  }
  return total;
}

double val(const OnlineVertex& v, const ProbeString& s) {
  double total = 0.0;
  double g = 1.0;
  for (EdgeIndex e : s) {
    const Edge& edge = v.edges.at(e);
    total += edge.probability * edge.weight * g;
    g *= 1.0 - edge.probability;
  }
  return total;
}

ProbeString weight_sorted(const OnlineVertex& v, const ProbeString& s) {
  std::vector<EdgeIndex> idx = s.indices();
  std::stable_sort(idx.begin(), idx.end(), [&](EdgeIndex a, EdgeIndex b) {
    return v.edges[a].weight > v.edges[b].weight;
  });
  return ProbeString(std::move(idx));
}

std::vector<ConfigGroup> config_groups(const KnownIDInput& in) {
  std::vector<ConfigGroup> out;
  for (std::size_t i = 0; i < in.arrivals(); ++i) {
    for (const auto& tm : in.distributions[i]) {
      if (tm.prob > 0.0) out.push_back({i, tm.type, tm.prob});
    }
  }
  return out;
}

namespace {

Column make_column(const StochasticGraph& types, std::size_t offline_rows, std::size_t group_index,
                   const ConfigGroup& grp, const ProbeString& s) {
  const OnlineVertex& v = types.online(grp.type);
  Column col;
  col.objective = val(v, s);
  double g = 1.0;
  for (EdgeIndex e : s) {
    const Edge& edge = v.edges[e];
    const double coef = edge.probability * g;
    if (coef != 0.0) col.entries.push_back({edge.offline, coef});
    g *= 1.0 - edge.probability;
  }
  col.entries.push_back({offline_rows + group_index, 1.0});
  col.name = "x" + std::to_string(grp.arrival) + "_" + std::to_string(grp.type) + s.to_string();
  col.meta = ColumnMeta{group_index, s};
  return col;
}

LPModel build_master(const KnownIDInput& in, const std::vector<ConfigGroup>& groups,
                     const std::vector<std::vector<ProbeString>>& strings) {
  const auto& types = in.type_graph;
  LPModel m;
  for (std::size_t u = 0; u < types.offline_count(); ++u) {
    m.add_row(RowSense::kLessEqual, 1.0, "match_" + types.offline_id(static_cast<OfflineIndex>(u)));
  }
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    m.add_row(RowSense::kEqual, groups[gi].mass,
              "dist_" + std::to_string(groups[gi].arrival) + "_" + std::to_string(groups[gi].type));
  }
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (const auto& s : strings[gi]) {
      Column c = make_column(types, types.offline_count(), gi, groups[gi], s);
      m.add_column(c.objective, std::move(c.entries), std::move(c.name), std::move(c.meta));
    }
  }
  return m;
}

std::vector<std::vector<ProbeString>> enumerate_all(const KnownIDInput& in,
                                                    const std::vector<ConfigGroup>& groups,
                                                    std::size_t cap) {
  std::map<OnlineIndex, std::vector<ProbeString>> per_type;
  std::vector<std::vector<ProbeString>> out;
  out.reserve(groups.size());
  for (const auto& grp : groups) {
    auto it = per_type.find(grp.type);
    if (it == per_type.end()) {
      const OnlineVertex& v = in.type_graph.online(grp.type);
      it = per_type.emplace(grp.type, enumerate_strings(v.constraint, v.degree(), cap)).first;
    }
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

LPModel build_lp_config_id(const KnownIDInput& in, std::size_t cap) {
  const auto groups = config_groups(in);
  return build_master(in, groups, enumerate_all(in, groups, cap));
}

LPModel build_lp_config(const StochasticGraph& g, std::size_t cap) {
  return build_lp_config_id(KnownIDInput::from_graph(g), cap);
}

ConfigSolution extract_solution(const KnownIDInput& in, const LPModel& model,
                                const SimplexResult& res) {
  const auto groups = config_groups(in);
  const std::size_t nu = in.type_graph.offline_count();
  ConfigSolution sol;
  sol.alpha.assign(res.duals.begin(), res.duals.begin() + static_cast<std::ptrdiff_t>(nu));
  sol.groups.resize(groups.size());
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    sol.groups[gi].group = groups[gi];
    sol.groups[gi].beta = res.duals[nu + gi];
  }
  for (std::size_t j = 0; j < model.column_count(); ++j) {
    const auto& meta = model.column(j).meta;
    if (!meta || meta->group >= groups.size()) throw Error("configuration column without group");
    if (res.x[j] > 0.0) sol.groups[meta->group].strings.push_back({meta->string, res.x[j]});
  }
  for (auto& gs : sol.groups) {
    std::sort(gs.strings.begin(), gs.strings.end(),
              [](const WeightedString& a, const WeightedString& b) { return a.string < b.string; });
  }
  sol.objective = res.objective;
  sol.dual_objective = res.dual_objective;
  sol.columns = model.column_count();
  sol.max_primal_residual = res.max_primal_residual;
  return sol;
}

ConfigSolution solve_lp_config(const KnownIDInput& in, const ConfigLPOptions& opts) {
  const auto groups = config_groups(in);
  if (opts.method == LPMethod::kEnumerate) {
    const LPModel m = build_master(in, groups, enumerate_all(in, groups, opts.enumerate_cap));
    ConfigSolution sol = extract_solution(in, m, simplex_solve(m, opts.simplex));
    sol.rounds = 1;
    return sol;
  }

  std::vector<std::vector<ProbeString>> strings(groups.size(), std::vector<ProbeString>{ProbeString{}});
  std::vector<std::set<ProbeString>> present(groups.size(), std::set<ProbeString>{ProbeString{}});
  const std::size_t nu = in.type_graph.offline_count();
  double gap = 0.0;
  for (std::size_t round = 1; round <= opts.max_rounds; ++round) {
    const LPModel m = build_master(in, groups, strings);
    const SimplexResult res = simplex_solve(m, opts.simplex);
    const std::span<const double> alpha(res.duals.data(), nu);
    std::map<OnlineIndex, DemandResult> priced;
    gap = 0.0;
    bool added = false;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      auto it = priced.find(groups[gi].type);
      if (it == priced.end()) {
        const OnlineVertex& v = in.type_graph.online(groups[gi].type);
        it = priced.emplace(groups[gi].type, demand_oracle(v, adjusted_weights(v, alpha))).first;
      }
      const double beta = res.duals[nu + gi];
      const double violation = it->second.value - beta;
      if (violation > opts.pricing_tol && present[gi].insert(it->second.string).second) {
        gap = std::max(gap, violation);
        strings[gi].push_back(it->second.string);
        added = true;
      }
    }
    if (!added) {
      ConfigSolution sol = extract_solution(in, m, res);
      sol.rounds = round;
      return sol;
    }
  }
  throw NonConvergenceError(opts.max_rounds, gap);
}

ConfigSolution solve_lp_config(const StochasticGraph& g, const ConfigLPOptions& opts) {
  return solve_lp_config(KnownIDInput::from_graph(g), opts);
}

std::vector<std::vector<double>> induced_edge_variables(const KnownIDInput& in,
                                                        const ConfigSolution& sol) {
  std::vector<std::vector<double>> out(sol.groups.size());
  for (std::size_t gi = 0; gi < sol.groups.size(); ++gi) {
    const OnlineVertex& v = in.type_graph.online(sol.groups[gi].group.type);
    out[gi].assign(v.degree(), 0.0);
    for (const auto& ws : sol.groups[gi].strings) {
      double g = 1.0;
      for (EdgeIndex e : ws.string) {
        out[gi][e] += g * ws.mass;
        g *= 1.0 - v.edges[e].probability;
      }
    }
  }
  return out;
}

std::vector<std::vector<double>> conditional_commit_probabilities(const KnownIDInput& in,
                                                                  const ConfigSolution& sol) {
  auto out = induced_edge_variables(in, sol);
  for (std::size_t gi = 0; gi < out.size(); ++gi) {
    const OnlineVertex& v = in.type_graph.online(sol.groups[gi].group.type);
    for (std::size_t e = 0; e < out[gi].size(); ++e) {
      out[gi][e] *= v.edges[e].probability / sol.groups[gi].group.mass;
    }
  }
  return out;
}

std::vector<std::vector<double>> arrival_commit_probabilities(const KnownIDInput& in,
                                                              const ConfigSolution& sol) {
  const auto xt = induced_edge_variables(in, sol);
  std::vector<std::vector<double>> z(in.arrivals(),
                                     std::vector<double>(in.type_graph.offline_count(), 0.0));
  for (std::size_t gi = 0; gi < xt.size(); ++gi) {
    const auto& grp = sol.groups[gi].group;
    const OnlineVertex& v = in.type_graph.online(grp.type);
    for (std::size_t e = 0; e < xt[gi].size(); ++e) {
      z[grp.arrival][v.edges[e].offline] += v.edges[e].probability * xt[gi][e];
    }
  }
  return z;
}

double relaxed_value(const KnownIDInput& in, const ConfigSolution& sol) {
  double total = 0.0;
  for (const auto& gs : sol.groups) {
    const OnlineVertex& v = in.type_graph.online(gs.group.type);
    for (const auto& ws : gs.strings) total += val(v, ws.string) * ws.mass;
  }
  return total;
}

}  // namespace probematch::lp
