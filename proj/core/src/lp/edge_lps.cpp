#include "probematch/lp/edge_lps.hpp"

#include <cstdint>
#include <string>

#include "probematch/errors.hpp"

namespace probematch::lp {

namespace {

std::string edge_name(const StochasticGraph& g, std::size_t v, const Edge& e) {
  return "x_" + g.offline_id(e.offline) + "_" + g.online(v).id;
}

std::size_t add_offline_rows(const StochasticGraph& g, LPModel& m) {
  for (std::size_t u = 0; u < g.offline_count(); ++u) {
    m.add_row(RowSense::kLessEqual, 1.0, "match_" + g.offline_id(static_cast<OfflineIndex>(u)));
  }
  return g.offline_count();
}

}  // namespace

LPModel build_lp_std(const StochasticGraph& g) {
  LPModel m;
  add_offline_rows(g, m);
  std::vector<std::vector<std::vector<Entry>>> cols(g.online_count());
  for (std::size_t v = 0; v < g.online_count(); ++v) {
    const OnlineVertex& ov = g.online(v);
    if (!ov.constraint.is<Patience>()) {
      throw UnsupportedConstraint("edge LP with patience rows needs patience constraints; vertex " +
                                  ov.id + " has " + ov.constraint.kind_name());
    }
    cols[v].resize(ov.degree());
    const std::size_t prob_row = m.add_row(RowSense::kLessEqual, 1.0, "prob_" + ov.id);
    const std::size_t limit = ov.constraint.as<Patience>().limit;
    std::size_t patience_row = kNoGroup;
    if (limit < ov.degree()) {
      patience_row = m.add_row(RowSense::kLessEqual, static_cast<double>(limit), "patience_" + ov.id);
    }
    for (std::size_t k = 0; k < ov.degree(); ++k) {
      const Edge& e = ov.edges[k];
      auto& col = cols[v][k];
      if (e.probability != 0.0) {
        col.push_back({e.offline, e.probability});
        col.push_back({prob_row, e.probability});
      }
      if (patience_row != kNoGroup) col.push_back({patience_row, 1.0});
      col.push_back({m.add_row(RowSense::kLessEqual, 1.0, "bound_" + edge_name(g, v, e)), 1.0});
    }
  }
  for (std::size_t v = 0; v < g.online_count(); ++v) {
    for (std::size_t k = 0; k < cols[v].size(); ++k) {
      const Edge& e = g.online(v).edges[k];
      m.add_column(e.weight * e.probability, std::move(cols[v][k]), edge_name(g, v, e));
    }
  }
  return m;
}

LPModel build_lp_qc(const StochasticGraph& g, std::size_t max_degree) {
  LPModel m;
  add_offline_rows(g, m);
  std::vector<std::vector<std::vector<Entry>>> cols(g.online_count());
  for (std::size_t v = 0; v < g.online_count(); ++v) {
    const OnlineVertex& ov = g.online(v);
    const std::size_t d = ov.degree();
    if (!ov.constraint.is_unbounded(d)) {
      throw UnsupportedConstraint("subset-row edge LP needs unbounded patience; vertex " + ov.id +
                                  " has a binding " + ov.constraint.kind_name() + " constraint");
    }
    if (d > max_degree || d > 30) {
      throw UnsupportedConstraint("subset-row edge LP supports degree <= " +
                                  std::to_string(max_degree) + "; vertex " + ov.id + " has " +
                                  std::to_string(d));
    }
    cols[v].resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      const Edge& e = ov.edges[k];
      if (e.probability != 0.0) cols[v][k].push_back({e.offline, e.probability});
    }
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << d); ++mask) {
      double none = 1.0;
      for (std::size_t k = 0; k < d; ++k) {
        if (mask >> k & 1U) none *= 1.0 - ov.edges[k].probability;
      }
      const std::size_t row =
          m.add_row(RowSense::kLessEqual, 1.0 - none, "subset_" + ov.id + "_" + std::to_string(mask));
      for (std::size_t k = 0; k < d; ++k) {
        if ((mask >> k & 1U) && ov.edges[k].probability != 0.0) {
          cols[v][k].push_back({row, ov.edges[k].probability});
        }
      }
    }
  }
  for (std::size_t v = 0; v < g.online_count(); ++v) {
    for (std::size_t k = 0; k < cols[v].size(); ++k) {
      const Edge& e = g.online(v).edges[k];
      m.add_column(e.weight * e.probability, std::move(cols[v][k]), edge_name(g, v, e));
    }
  }
  return m;
}

EdgeLPSolution solve_edge_lp(const StochasticGraph& g, const LPModel& model,
                             const SimplexOptions& opts) {
  const SimplexResult res = simplex_solve(model, opts);
  EdgeLPSolution out;
  out.objective = res.objective;
  out.dual_objective = res.dual_objective;
  out.x.resize(g.online_count());
  std::size_t j = 0;
  for (std::size_t v = 0; v < g.online_count(); ++v) {
    out.x[v].resize(g.online(v).degree());
    for (auto& x : out.x[v]) x = res.x.at(j++);
  }
  return out;
}

}  // namespace probematch::lp
