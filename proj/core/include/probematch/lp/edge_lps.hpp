#pragma once

#include <cstddef>
#include <vector>

#include "probematch/graph.hpp"
#include "probematch/lp/model.hpp"
#include "probematch/lp/simplex.hpp"

namespace probematch::lp {

/// Edge-variable LP with per-vertex probability rows, patience rows and
/// x_e <= 1. Columns follow online-major edge order. Requires patience
/// constraints.
LPModel build_lp_std(const StochasticGraph& g);

/// Edge-variable LP with one row per non-empty subset S of each online
/// vertex's edges: sum_{e in S} p_e x_e <= 1 - prod_{e in S}(1 - p_e), plus
/// offline rows. Requires unbounded patience and degree <= max_degree.
LPModel build_lp_qc(const StochasticGraph& g, std::size_t max_degree = 12);

struct EdgeLPSolution {
  std::vector<std::vector<double>> x;  // [online][local edge]
  double objective = 0.0;
  double dual_objective = 0.0;
};

EdgeLPSolution solve_edge_lp(const StochasticGraph& g, const LPModel& model,
                             const SimplexOptions& opts = {});

}  // namespace probematch::lp
