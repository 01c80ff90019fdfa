#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <sstream>

#include "probematch/errors.hpp"
#include "probematch/lp/model.hpp"
#include "probematch/lp/simplex.hpp"
#include "probematch/rng.hpp"

namespace pm = probematch;
using pm::lp::Entry;
using pm::lp::LPModel;
using pm::lp::RowSense;

namespace {

// Solves A x = b for a square system by partial pivoting; false if singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) < 1e-10) return false;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

// Optimum over basic feasible solutions of the slack form, by trying every
// basis. Returns -inf when no basis is feasible.
double vertex_enumeration(const LPModel& m) {
  const std::size_t rows = m.row_count();
  const std::size_t cols = m.column_count();
  std::vector<std::vector<double>> a(rows, std::vector<double>(cols + rows, 0.0));
  std::vector<double> c(cols + rows, 0.0);
  for (std::size_t j = 0; j < cols; ++j) {
    c[j] = m.column(j).objective;
    for (const auto& e : m.column(j).entries) a[e.row][j] += e.coef;
  }
  std::vector<std::size_t> allowed;
  for (std::size_t j = 0; j < cols; ++j) allowed.push_back(j);
  for (std::size_t i = 0; i < rows; ++i) {
    a[i][cols + i] = 1.0;
    if (m.row(i).sense == RowSense::kLessEqual) allowed.push_back(cols + i);
  }
  std::vector<double> b;
  for (const auto& r : m.rows()) b.push_back(r.rhs);
  double best = -INFINITY;
  const std::size_t k = allowed.size();
  std::vector<std::size_t> pick(rows);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == rows) {
      std::vector<std::vector<double>> sq(rows, std::vector<double>(rows));
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t t = 0; t < rows; ++t) sq[i][t] = a[i][pick[t]];
      }
      std::vector<double> x;
      if (!solve_square(sq, b, x)) return;
      double obj = 0.0;
      for (std::size_t t = 0; t < rows; ++t) {
        if (x[t] < -1e-9) return;
        obj += c[pick[t]] * x[t];
      }
      best = std::max(best, obj);
      return;
    }
    for (std::size_t j = start; j < k; ++j) {
      pick[depth] = allowed[j];
      rec(j + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

double dual_objective_of(const LPModel& m, const std::vector<double>& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < m.row_count(); ++i) d += y[i] * m.row(i).rhs;
  return d;
}

}  // namespace

TEST(Simplex, OneByOne) {
  LPModel m;
  m.add_row(RowSense::kLessEqual, 1.0);
  m.add_column(1.0, {{0, 1.0}});
  const auto r = pm::lp::simplex_solve(m);
  EXPECT_NEAR(r.x[0], 1.0, 1e-12);
  EXPECT_NEAR(r.duals[0], 1.0, 1e-12);
  EXPECT_NEAR(r.objective, 1.0, 1e-12);
}

TEST(Simplex, EmptyModel) {
  const auto r = pm::lp::simplex_solve(LPModel{});
  EXPECT_EQ(r.objective, 0.0);
}

TEST(Simplex, RedundantEqualRowsTerminate) {
  LPModel m;
  for (int i = 0; i < 4; ++i) m.add_row(RowSense::kEqual, 1.0);
  m.add_row(RowSense::kLessEqual, 0.0);
  for (int j = 0; j < 3; ++j) {
    std::vector<Entry> e;
    for (std::size_t i = 0; i < 4; ++i) e.push_back({i, 1.0});
    e.push_back({4, 0.0});
    m.add_column(1.0 + j, e);
  }
  const auto r = pm::lp::simplex_solve(m);
  EXPECT_NEAR(r.objective, 3.0, 1e-9);
  EXPECT_LE(r.max_primal_residual, 1e-9);
}

TEST(Simplex, InfeasibleAndUnbounded) {
  LPModel inf;
  inf.add_row(RowSense::kEqual, 1.0);
  inf.add_row(RowSense::kLessEqual, 0.5);
  inf.add_column(1.0, {{0, 1.0}, {1, 1.0}});
  EXPECT_THROW(pm::lp::simplex_solve(inf), pm::SimplexError);

  LPModel unb;
  unb.add_row(RowSense::kLessEqual, 1.0);
  unb.add_column(1.0, {{0, 1.0}});
  unb.add_column(1.0, {{0, -1.0}});
  EXPECT_THROW(pm::lp::simplex_solve(unb), pm::SimplexError);
}

TEST(Simplex, DegenerateCycleProneInstance) {
  // Beale's example, rewritten as a maximization.
  LPModel m;
  m.add_row(RowSense::kLessEqual, 0.0);
  m.add_row(RowSense::kLessEqual, 0.0);
  m.add_row(RowSense::kLessEqual, 1.0);
  m.add_column(0.75, {{0, 0.25}, {1, 0.5}});
  m.add_column(-150.0, {{0, -60.0}, {1, -90.0}});
  m.add_column(0.02, {{0, -1.0 / 25}, {1, -1.0 / 50}, {2, 1.0}});
  m.add_column(-6.0, {{0, 9.0}, {1, 3.0}});
  const auto r = pm::lp::simplex_solve(m);
  EXPECT_NEAR(r.objective, 0.05, 1e-9);
}

TEST(Simplex, MatchesVertexEnumerationOnRandomLPs) {
  pm::CounterRng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    LPModel m;
    const std::size_t rows = 2 + rng.below(3);
    const std::size_t cols = 2 + rng.below(4);
    const bool with_equality = rng.bernoulli(0.3);
    for (std::size_t i = 0; i < rows; ++i) {
      m.add_row(with_equality && i == 0 ? RowSense::kEqual : RowSense::kLessEqual, 0.5 + rng.uniform());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<Entry> e;
      for (std::size_t i = 0; i < rows; ++i) {
        if (rng.bernoulli(0.8) || i == 0) e.push_back({i, 0.1 + rng.uniform()});
      }
      m.add_column(rng.uniform() * 2.0 - 0.5, e);
    }
    const double want = vertex_enumeration(m);
    if (!std::isfinite(want)) {
      EXPECT_THROW(pm::lp::simplex_solve(m), pm::SimplexError) << "trial " << trial;
      continue;
    }
    const auto r = pm::lp::simplex_solve(m);
    EXPECT_NEAR(r.objective, want, 1e-9) << "trial " << trial;
    EXPECT_NEAR(dual_objective_of(m, r.duals), r.objective, 1e-9);
    EXPECT_NEAR(r.duality_gap(), 0.0, 1e-9);
    for (std::size_t j = 0; j < cols; ++j) EXPECT_GE(r.x[j], -1e-12);
    for (std::size_t i = 0; i < rows; ++i) {
      if (m.row(i).sense == RowSense::kLessEqual) EXPECT_GE(r.duals[i], -1e-9);
    }
  }
}

TEST(Simplex, BlandFallbackGivesSameOptimum) {
  pm::CounterRng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    LPModel m;
    for (std::size_t i = 0; i < 4; ++i) m.add_row(RowSense::kLessEqual, rng.bernoulli(0.5) ? 0.0 : 1.0);
    m.add_row(RowSense::kLessEqual, 5.0);
    for (std::size_t j = 0; j < 6; ++j) {
      std::vector<Entry> e;
      for (std::size_t i = 0; i < 4; ++i) e.push_back({i, rng.uniform() * 2.0 - 0.5});
      e.push_back({4, 1.0});
      m.add_column(rng.uniform(), e);
    }
    pm::lp::SimplexOptions dantzig;
    pm::lp::SimplexOptions bland;
    bland.bland_after_stall = 0;
    try {
      const auto a = pm::lp::simplex_solve(m, dantzig);
      const auto b = pm::lp::simplex_solve(m, bland);
      EXPECT_NEAR(a.objective, b.objective, 1e-9);
    } catch (const pm::SimplexError&) {
      EXPECT_THROW(pm::lp::simplex_solve(m, bland), pm::SimplexError);
    }
  }
}

TEST(LPModelText, RoundTrip) {
  LPModel m;
  m.add_row(RowSense::kLessEqual, 1.0, "a");
  m.add_row(RowSense::kEqual, 0.5, "b");
  m.add_column(2.0, {{0, 1.0}, {1, 0.25}}, "x", pm::lp::ColumnMeta{1, pm::ProbeString{0, 2}});
  m.add_column(-1.0, {{1, 1.0}}, "y");
  std::ostringstream os;
  pm::lp::write_model(m, os);
  std::istringstream is(os.str());
  const LPModel back = pm::lp::read_model(is);
  std::ostringstream os2;
  pm::lp::write_model(back, os2);
  EXPECT_EQ(os.str(), os2.str());
  ASSERT_TRUE(back.column(0).meta.has_value());
  EXPECT_EQ(back.column(0).meta->string, (pm::ProbeString{0, 2}));
}
