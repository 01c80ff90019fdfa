#include "probematch/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "probematch/errors.hpp"

namespace probematch::lp {

double SimplexResult::duality_gap() const noexcept {
  return std::abs(objective - dual_objective) / std::max(1.0, std::abs(objective));
}

namespace {

enum class ColKind { kStructural, kSlack, kArtificial };

class RevisedSimplex {
 public:
  RevisedSimplex(const LPModel& model, const SimplexOptions& opts) : model_(model), opts_(opts) {
    m_ = model.row_count();
    n_ = model.column_count();
    flip_.assign(m_, false);
    b_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      flip_[i] = model.row(i).rhs < 0.0;
      b_[i] = flip_[i] ? -model.row(i).rhs : model.row(i).rhs;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      std::vector<Entry> col;
      for (const auto& e : model.column(j).entries) {
        if (e.coef != 0.0) col.push_back({e.row, flip_[e.row] ? -e.coef : e.coef});
      }
      add_internal(ColKind::kStructural, std::move(col));
    }
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      const bool le = model.row(i).sense == RowSense::kLessEqual;
      if (le && !flip_[i]) {
        basis_[i] = add_internal(ColKind::kSlack, {{i, 1.0}});
      } else {
        if (le) add_internal(ColKind::kSlack, {{i, -1.0}});
        basis_[i] = add_internal(ColKind::kArtificial, {{i, 1.0}});
        has_artificial_ = true;
      }
    }
    max_iters_ = opts.max_iterations ? opts.max_iterations : 100000 + 50 * (m_ + n_);
  }

  SimplexResult run() {
    SimplexResult res;
    is_basic_.assign(cols_.size(), false);
    for (std::size_t c : basis_) is_basic_[c] = true;
    refactor();
    if (has_artificial_) {
      cost_.assign(cols_.size(), 0.0);
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (kind_[j] == ColKind::kArtificial) cost_[j] = -1.0;
      }
      iterate(/*allow_artificial=*/true);
      double infeas = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (kind_[basis_[i]] == ColKind::kArtificial) infeas += std::max(0.0, xb_[i]);
      }
      double bscale = 1.0;
      for (double v : b_) bscale = std::max(bscale, std::abs(v));
      if (infeas > opts_.feasibility_tol * bscale) {
        throw SimplexError("LP is infeasible", iterations_, infeas);
      }
      drive_out_artificials();
    }
    cost_.assign(cols_.size(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = model_.column(j).objective;
    iterate(/*allow_artificial=*/false);
    refactor();

    res.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) res.x[basis_[i]] = std::max(0.0, xb_[i]);
    }
    const auto y = duals();
    res.duals.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) res.duals[i] = flip_[i] ? -y[i] : y[i];
    res.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j) res.objective += model_.column(j).objective * res.x[j];
    res.dual_objective = 0.0;
    for (std::size_t i = 0; i < m_; ++i) res.dual_objective += model_.row(i).rhs * res.duals[i];
    res.iterations = iterations_;
    res.used_bland = bland_;
    res.max_primal_residual = primal_residual(res.x);
    if (res.max_primal_residual > 1e-6) {
      throw SimplexError("numerical stall: primal residual too large", iterations_,
                         res.max_primal_residual);
    }
    return res;
  }

 private:
  std::size_t add_internal(ColKind kind, std::vector<Entry> col) {
    cols_.push_back(std::move(col));
    kind_.push_back(kind);
    return cols_.size() - 1;
  }

  double& binv(std::size_t r, std::size_t c) { return binv_[r * m_ + c]; }

  // Gauss-Jordan inversion of the current basis matrix with partial pivoting.
  void refactor() {
    std::vector<double> a(m_ * m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      for (const auto& e : cols_[basis_[k]]) a[e.row * m_ + k] = e.coef;
    }
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) binv(i, i) = 1.0;
    std::vector<std::size_t> perm(m_);
    for (std::size_t col = 0; col < m_; ++col) {
      std::size_t piv = col;
      double best = std::abs(a[col * m_ + col]);
      for (std::size_t r = col + 1; r < m_; ++r) {
        if (std::abs(a[r * m_ + col]) > best) {
          best = std::abs(a[r * m_ + col]);
          piv = r;
        }
      }
      if (best < 1e-12) throw SimplexError("numerical stall: singular basis", iterations_, best);
      if (piv != col) {
        for (std::size_t c = 0; c < m_; ++c) {
          std::swap(a[piv * m_ + c], a[col * m_ + c]);
          std::swap(binv(piv, c), binv(col, c));
        }
      }
      const double d = a[col * m_ + col];
      for (std::size_t c = 0; c < m_; ++c) {
        a[col * m_ + c] /= d;
        binv(col, c) /= d;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = a[r * m_ + col];
        if (f == 0.0) continue;
        for (std::size_t c = 0; c < m_; ++c) {
          a[r * m_ + c] -= f * a[col * m_ + c];
          binv(r, c) -= f * binv(col, c);
        }
      }
    }
    // The inverse above maps row space of B to basis positions; B^{-1}[k][i]
    // multiplies row i of the constraint system for basis position k.
    xb_.assign(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < m_; ++i) s += binv(k, i) * b_[i];
      xb_[k] = s;
    }
    since_refactor_ = 0;
  }

  std::vector<double> duals() {
    std::vector<double> y(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      const double c = cost_[basis_[k]];
      if (c == 0.0) continue;
      for (std::size_t i = 0; i < m_; ++i) y[i] += c * binv(k, i);
    }
    return y;
  }

  double reduced_cost(std::size_t j, const std::vector<double>& y) const {
    double d = cost_[j];
    for (const auto& e : cols_[j]) d -= y[e.row] * e.coef;
    return d;
  }

  std::vector<double> ftran(std::size_t j) {
    std::vector<double> alpha(m_, 0.0);
    for (const auto& e : cols_[j]) {
      for (std::size_t k = 0; k < m_; ++k) alpha[k] += binv(k, e.row) * e.coef;
    }
    return alpha;
  }

  void pivot(std::size_t leave_pos, std::size_t enter, const std::vector<double>& alpha) {
    const double piv = alpha[leave_pos];
    const double theta = xb_[leave_pos] / piv;
    for (std::size_t k = 0; k < m_; ++k) {
      if (k == leave_pos) continue;
      xb_[k] -= theta * alpha[k];
      if (std::abs(xb_[k]) < 1e-13) xb_[k] = 0.0;
    }
    xb_[leave_pos] = theta;
    for (std::size_t c = 0; c < m_; ++c) binv(leave_pos, c) /= piv;
    for (std::size_t k = 0; k < m_; ++k) {
      if (k == leave_pos || alpha[k] == 0.0) continue;
      const double f = alpha[k];
      for (std::size_t c = 0; c < m_; ++c) binv(k, c) -= f * binv(leave_pos, c);
    }
    is_basic_[basis_[leave_pos]] = false;
    basis_[leave_pos] = enter;
    is_basic_[enter] = true;
    ++iterations_;
    if (++since_refactor_ >= opts_.refactor_every) refactor();
  }

  void iterate(bool allow_artificial) {
    std::size_t stall = 0;
    double last_obj = current_objective();
    while (true) {
      if (iterations_ >= max_iters_) {
        throw SimplexError("numerical stall: iteration cap reached", iterations_,
                           primal_infeasibility());
      }
      const auto y = duals();
      std::size_t enter = cols_.size();
      double best = opts_.optimality_tol;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (is_basic_[j]) continue;
        if (!allow_artificial && kind_[j] == ColKind::kArtificial) continue;
        const double d = reduced_cost(j, y);
        if (d > best) {
          enter = j;
          if (bland_) break;
          best = d;
        }
      }
      if (enter == cols_.size()) return;

      const auto alpha = ftran(enter);
      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < m_; ++k) {
        if (alpha[k] <= opts_.pivot_tol) continue;
        const double ratio = std::max(0.0, xb_[k]) / alpha[k];
        if (leave == m_ || ratio < best_ratio - 1e-12) {
          leave = k;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12) {
          const bool better = bland_ ? basis_[k] < basis_[leave] : alpha[k] > alpha[leave];
          if (better) {
            leave = k;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (leave == m_) throw SimplexError("LP is unbounded", iterations_, 0.0);
      xb_[leave] = std::max(0.0, xb_[leave]);
      pivot(leave, enter, alpha);

      const double obj = current_objective();
      if (obj > last_obj + 1e-12 * std::max(1.0, std::abs(last_obj))) {
        stall = 0;
      } else if (++stall >= opts_.bland_after_stall) {
        bland_ = true;
      }
      last_obj = obj;
    }
  }

  void drive_out_artificials() {
    for (std::size_t k = 0; k < m_; ++k) {
      if (kind_[basis_[k]] != ColKind::kArtificial) continue;
      std::size_t enter = cols_.size();
      double best = 1e-9;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (is_basic_[j] || kind_[j] == ColKind::kArtificial) continue;
        double v = 0.0;
        for (const auto& e : cols_[j]) v += binv(k, e.row) * e.coef;
        if (std::abs(v) > best) {
          best = std::abs(v);
          enter = j;
        }
      }
      // No candidate means the row is redundant; the artificial stays basic
      // at zero and no structural column can move it.
      if (enter == cols_.size()) continue;
      auto alpha = ftran(enter);
      xb_[k] = 0.0;
      pivot(k, enter, alpha);
    }
  }

  double current_objective() const {
    double s = 0.0;
    for (std::size_t k = 0; k < m_; ++k) s += cost_[basis_[k]] * xb_[k];
    return s;
  }

  double primal_infeasibility() const {
    double worst = 0.0;
    for (double v : xb_) worst = std::max(worst, -v);
    return worst;
  }

  double primal_residual(const std::vector<double>& x) const {
    std::vector<double> ax(m_, 0.0);
    double worst = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      worst = std::max(worst, -x[j]);
      for (const auto& e : model_.column(j).entries) ax[e.row] += e.coef * x[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const Row& r = model_.row(i);
      const double diff = ax[i] - r.rhs;
      const double viol = r.sense == RowSense::kEqual ? std::abs(diff) : std::max(0.0, diff);
      worst = std::max(worst, viol / std::max(1.0, std::abs(r.rhs)));
    }
    return worst;
  }

  const LPModel& model_;
  SimplexOptions opts_;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<bool> flip_;
  std::vector<double> b_;
  std::vector<std::vector<Entry>> cols_;
  std::vector<ColKind> kind_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  std::size_t iterations_ = 0;
  std::size_t since_refactor_ = 0;
  std::size_t max_iters_ = 0;
  bool bland_ = false;
  bool has_artificial_ = false;
};

}  // namespace

SimplexResult simplex_solve(const LPModel& model, const SimplexOptions& opts) {
  if (model.row_count() == 0) {
    SimplexResult res;
    res.x.assign(model.column_count(), 0.0);
    for (std::size_t j = 0; j < model.column_count(); ++j) {
      if (model.column(j).objective > opts.optimality_tol) {
        throw SimplexError("LP is unbounded", 0, 0.0);
      }
    }
    return res;
  }
  return RevisedSimplex(model, opts).run();
}

}  // namespace probematch::lp
