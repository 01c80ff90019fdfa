#pragma once

#include <cstddef>
#include <vector>

#include "probematch/lp/model.hpp"

namespace probematch::lp {

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  /// A column may enter while its reduced cost exceeds this value.
  double optimality_tol = 1e-11;
  double pivot_tol = 1e-9;
  /// Consecutive non-improving pivots before switching to Bland's rule.
  std::size_t bland_after_stall = 500;
  std::size_t refactor_every = 64;
  /// Zero selects 100000 + 50 * (rows + columns).
  std::size_t max_iterations = 0;
};

struct SimplexResult {
  std::vector<double> x;      // one value per model column
  std::vector<double> duals;  // one value per model row
  double objective = 0.0;
  double dual_objective = 0.0;
  std::size_t iterations = 0;
  double max_primal_residual = 0.0;
  bool used_bland = false;

  double duality_gap() const noexcept;
};

/// Two-phase revised simplex with a dense explicit basis inverse. Duals are
/// reported in the model's row orientation: for a maximization with <= rows
/// they are non-negative at optimality.
/// Throws SimplexError when the model is infeasible, unbounded, or the
/// iteration cap is reached.
SimplexResult simplex_solve(const LPModel& model, const SimplexOptions& opts = {});

}  // namespace probematch::lp
