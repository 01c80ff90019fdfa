#include <benchmark/benchmark.h>

#include "probematch/harness/suites.hpp"
#include "probematch/lp/config_lp.hpp"
#include "probematch/lp/demand_oracle.hpp"
#include "probematch/lp/edge_lps.hpp"
#include "probematch/lp/simplex.hpp"
#include "probematch/probing/online.hpp"
#include "probematch/rng.hpp"

namespace pm = probematch;

namespace {

pm::OnlineVertex wide_vertex(std::size_t degree, std::size_t patience) {
  pm::CounterRng rng(11);
  pm::OnlineVertex v{"v", {}, pm::ProbingConstraint::patience(patience)};
  for (std::size_t k = 0; k < degree; ++k) {
    v.edges.push_back({static_cast<pm::OfflineIndex>(k), 0.1 + rng.uniform(), rng.uniform()});
  }
  return v;
}

void BM_DemandOracle(benchmark::State& state) {
  const auto degree = static_cast<std::size_t>(state.range(0));
  const auto v = wide_vertex(degree, degree / 2);
  const std::vector<double> alpha(degree, 0.05);
  const auto adj = pm::lp::adjusted_weights(v, alpha);
  for (auto _ : state) benchmark::DoNotOptimize(pm::lp::demand_oracle(v, adj));
}
BENCHMARK(BM_DemandOracle)->Arg(4)->Arg(8)->Arg(14);

void BM_SimplexStd(benchmark::State& state) {
  const auto g = pm::harness::random_small_graph(7, static_cast<std::size_t>(state.range(0)));
  const auto model = pm::lp::build_lp_std(g);
  for (auto _ : state) benchmark::DoNotOptimize(pm::lp::simplex_solve(model));
}
BENCHMARK(BM_SimplexStd)->DenseRange(0, 3);

void BM_ColumnGeneration(benchmark::State& state) {
  const auto in = pm::harness::random_id_input(3, static_cast<std::size_t>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(pm::lp::solve_lp_config(in));
}
BENCHMARK(BM_ColumnGeneration)->DenseRange(0, 3);

void BM_TrialThroughput(benchmark::State& state) {
  const auto in = pm::harness::random_id_input(5, 0, false);
  const pm::probing::OnlinePlan plan(in, pm::lp::solve_lp_config(in));
  const auto alg = static_cast<pm::probing::Algorithm>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pm::probing::run_trial(plan, alg, pm::ArrivalModel::random_times(), 1, trial++));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(trial));
}
BENCHMARK(BM_TrialThroughput)->DenseRange(0, 2);

}  // namespace
