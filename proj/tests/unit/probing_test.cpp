#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "probematch/errors.hpp"
#include "probematch/harness/report.hpp"
#include "probematch/harness/suites.hpp"
#include "probematch/lp/config_lp.hpp"
#include "probematch/probing/crs.hpp"
#include "probematch/probing/online.hpp"
#include "probematch/probing/vertex_probe.hpp"
#include "probematch/probing/vertex_round.hpp"
#include "probematch/rng.hpp"

namespace pm = probematch;
namespace pr = pm::probing;
using pm::ProbeString;

namespace {

double sigma(double p, double n) { return std::sqrt(p * (1 - p) / n); }

// Selection probabilities of a one-item OCRS by summing over every
// (no commit | commit and accept | commit and reject) history.
std::vector<double> naive_selectability(const std::vector<double>& z, const std::vector<std::size_t>& order) {
  const std::size_t k = z.size();
  std::vector<double> sel(k, 0.0);
  std::function<void(std::size_t, double, double, bool)> rec = [&](std::size_t t, double prob, double prefix,
                                                                   bool taken) {
    if (t == k || prob == 0.0) return;
    const std::size_t i = order[t];
    const double q = 1.0 / (2.0 - prefix);
    rec(t + 1, prob * (1 - z[i]), prefix + z[i], taken);
    if (!taken) {
      sel[i] += prob * z[i] * q;
      rec(t + 1, prob * z[i] * q, prefix + z[i], true);
      rec(t + 1, prob * z[i] * (1 - q), prefix + z[i], false);
    } else {
      rec(t + 1, prob * z[i], prefix + z[i], true);
    }
  };
  rec(0, 1.0, 0.0, false);
  return sel;
}

pm::KnownIDInput two_on_one() {
  pm::KnownIDInput in;
  in.type_graph = pm::StochasticGraph({"x"}, {{"a", {{0, 1.0, 1.0}}, pm::ProbingConstraint::patience(1)},
                                              {"b", {{0, 1.0, 1.0}}, pm::ProbingConstraint::patience(1)}});
  in.distributions = {{{0, 1.0}}, {{1, 1.0}}};
  in.normalize_rows();
  return in;
}

}  // namespace

TEST(VertexProbe, LambdaAndCertainEdge) {
  const pm::OnlineVertex v{"v", {{0, 1.0, 1.0}, {1, 1.0, 0.5}}, pm::ProbingConstraint::unbounded()};
  pm::EdgeStates st(1, 0);
  const pr::StringDistribution lambda({{ProbeString{}, 1.0}});
  const auto none = pr::vertex_probe(v, 0, lambda, 0.3, st);
  EXPECT_FALSE(none.edge);
  EXPECT_TRUE(none.probes.empty());
  const pr::StringDistribution first({{ProbeString{0, 1}, 1.0}});
  for (std::uint64_t t = 0; t < 50; ++t) {
    pm::EdgeStates s(1, t);
    const auto ev = pr::vertex_probe(v, 0, first, 0.5, s);
    ASSERT_TRUE(ev.edge);
    EXPECT_EQ(*ev.edge, 0U);
    EXPECT_EQ(ev.probes.size(), 1U);
  }
}

TEST(VertexProbe, DistributionMassIsChecked) {
  EXPECT_THROW(pr::StringDistribution({{ProbeString{}, 0.5}}), pm::InvalidDistributionError);
  EXPECT_NO_THROW(pr::StringDistribution({{ProbeString{}, 0.25}, {ProbeString{0}, 0.25}}, 0.5));
}

TEST(VertexProbe, CommitFrequenciesMatchInducedVariables) {
  const pm::OnlineVertex v{"v", {{0, 1.0, 0.5}, {1, 2.0, 0.4}, {2, 0.5, 0.7}}, pm::ProbingConstraint::patience(2)};
  const std::vector<pm::lp::WeightedString> strings = {
      {ProbeString{0, 1}, 0.4}, {ProbeString{2}, 0.35}, {ProbeString{1, 2}, 0.15}, {ProbeString{}, 0.1}};
  const pr::StringDistribution dist(strings);
  // Expected p_e x~_e with x~_e = sum over strings containing e of mass * g(prefix).
  std::vector<double> want(3, 0.0);
  for (const auto& ws : strings) {
    double g = 1.0;
    for (auto e : ws.string) {
      want[e] += ws.mass * g * v.edges[e].probability;
      g *= 1 - v.edges[e].probability;
    }
  }
  const int n = 100000;
  std::vector<double> got(3, 0.0);
  pm::CounterRng u(8);
  for (int t = 0; t < n; ++t) {
    pm::EdgeStates st(3, static_cast<std::uint64_t>(t));
    const auto ev = pr::vertex_probe(v, 0, dist, u.uniform(), st);
    if (ev.edge) got[*ev.edge] += 1.0;
  }
  for (int e = 0; e < 3; ++e) EXPECT_NEAR(got[e] / n, want[e], 3 * sigma(want[e], n)) << e;
}

TEST(VertexRound, ForcedChainAndValidation) {
  pr::YSystem y{{ProbeString{}, 1.0}, {ProbeString{0}, 1.0}, {ProbeString{0, 1}, 0.0}};
  pm::CounterRng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(pr::vertex_round(y, rng), (ProbeString{0}));
  const auto c = pm::ProbingConstraint::patience(2);
  EXPECT_NO_THROW(pr::validate_y(c, y));
  pr::YSystem over{{ProbeString{}, 1.0}, {ProbeString{0}, 0.7}, {ProbeString{1}, 0.6}};
  EXPECT_THROW(pr::validate_y(c, over), pm::InvalidYError);
  pr::YSystem root{{ProbeString{}, 0.9}};
  EXPECT_THROW(pr::validate_y(c, root), pm::InvalidYError);
  pr::YSystem outside{{ProbeString{}, 1.0}, {ProbeString{0}, 0.5}, {ProbeString{0, 1}, 0.2}};
  EXPECT_THROW(pr::validate_y(pm::ProbingConstraint::patience(1), outside), pm::InvalidYError);
}

TEST(VertexRound, HalfHalfFrequencies) {
  pr::YSystem y{{ProbeString{}, 1.0}, {ProbeString{0}, 0.5}, {ProbeString{1}, 0.5}};
  pm::CounterRng rng(42);
  const int n = 100000;
  double first = 0;
  for (int i = 0; i < n; ++i) first += pr::vertex_round(y, rng) == ProbeString{0};
  EXPECT_NEAR(first / n, 0.5, 3 * sigma(0.5, n));
}

TEST(VertexRound, LPDerivedSystemReproducesPrefixMasses) {
  const auto g = pm::harness::star_graph(3, 2);
  const auto sol = pm::lp::solve_lp_config(g);
  const auto y = pr::y_from_masses(sol.groups[0].strings);
  pr::validate_y(g.online(0).constraint, y);
  std::map<ProbeString, double> hits;
  pm::CounterRng rng(6);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto s = pr::vertex_round(y, rng);
    for (std::size_t k = 1; k <= s.size(); ++k) hits[s.prefix(k)] += 1;
  }
  for (const auto& [s, target] : y) {
    if (s.empty()) continue;
    EXPECT_NEAR(hits[s] / n, target, 3 * sigma(target, n) + 1e-12);
  }
}

TEST(Ocrs, AcceptanceProbabilities) {
  EXPECT_DOUBLE_EQ(pr::ocrs_accept_prob(0.0), 0.5);
  EXPECT_DOUBLE_EQ(pr::ocrs_accept_prob(1.0), 1.0);
  EXPECT_DOUBLE_EQ(pr::ocrs_accept_prob(0.5), 2.0 / 3.0);
  EXPECT_THROW(pr::ocrs_accept_prob(1.2), pm::InfeasibleFractionalPoint);
}

TEST(Ocrs, ExactSelectabilityExamples) {
  const std::vector<double> one = {1.0};
  const std::vector<std::size_t> id1 = {0};
  EXPECT_DOUBLE_EQ(pr::ocrs_exact_selectability(one, id1)[0], 0.5);
  const std::vector<double> two = {0.5, 0.5};
  const std::vector<std::size_t> id2 = {0, 1};
  const auto s = pr::ocrs_exact_selectability(two, id2);
  EXPECT_NEAR(s[0], 0.5, 1e-15);
  EXPECT_NEAR(s[1], 0.5, 1e-15);
  const std::vector<double> bad = {0.7, 0.6};
  EXPECT_THROW(pr::ocrs_exact_selectability(bad, id2), pm::InfeasibleFractionalPoint);
}

TEST(Ocrs, SelectabilityMatchesHistoryEnumeration) {
  pm::CounterRng rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 1 + rng.below(6);
    std::vector<double> z(k);
    double total = 0.0;
    for (auto& x : z) total += (x = rng.uniform());
    const double scale = rng.uniform() / total;
    for (auto& x : z) x *= scale;
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = k; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    const auto got = pr::ocrs_exact_selectability(z, order);
    const auto want = naive_selectability(z, order);
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_NEAR(got[i] * z[i], want[i], 1e-12);
      EXPECT_GE(got[i], 0.5 - 1e-12);
    }
  }
}

TEST(Rcrs, AcceptanceProbabilities) {
  EXPECT_EQ(pr::rcrs_accept_prob(0.0, 0.7), 1.0);
  EXPECT_EQ(pr::rcrs_accept_prob(0.4, 0.0), 1.0);
  EXPECT_NEAR(pr::rcrs_accept_prob(1.0, 1.0), 0.36787944117144233, 1e-15);
  pm::CounterRng rng(3);
  const int n = 200000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += pr::rcrs_accept_prob(rng.uniform(), 1.0);
  EXPECT_NEAR(acc / n, 1.0 - std::exp(-1.0), 3 * std::sqrt(0.03 / n));
}

TEST(OnlineTrial, SingleVertexGreedyMatchesLPOPT) {
  const auto in = pm::KnownIDInput::from_graph(pm::harness::star_graph(3, 2));
  const auto sol = pm::lp::solve_lp_config(in);
  const pr::OnlinePlan plan(in, sol);
  pm::harness::SimulationOptions so{100000, 5, 0, true};
  const auto rep = pm::harness::simulate(plan, pr::Algorithm::kGreedy, pm::ArrivalModel::random_order(), so);
  EXPECT_NEAR(rep.mean, sol.objective, 3 * rep.std_error);
  EXPECT_NEAR(pr::exact_expected_weight(plan, pr::Algorithm::kGreedy, {0}), sol.objective, 1e-12);
}

TEST(OnlineTrial, FirstArrivalWinsAContestedVertex) {
  const auto in = two_on_one();
  const auto sol = pm::lp::solve_lp_config(in);
  const pr::OnlinePlan plan(in, sol);
  // The LP puts total commit mass 1 on x; greedy takes the first committer.
  const std::vector<std::size_t> order = {1, 0};
  const auto r = pr::run_trial(plan, pr::Algorithm::kGreedy, pm::ArrivalModel::adversarial(order), 1, 0);
  EXPECT_TRUE(pr::audit_trial(plan, r, 1, 0).empty());
  EXPECT_EQ(r.order, order);
  pm::harness::SimulationOptions so{20000, 2, 0, true};
  const auto rep = pm::harness::simulate(plan, pr::Algorithm::kGreedy, pm::ArrivalModel::random_order(), so);
  EXPECT_NEAR(rep.mean, sol.objective, 3 * rep.std_error + 1e-12);
}

TEST(OnlineTrial, EqualCommittersSplitUnderRandomOrder) {
  const auto in = two_on_one();
  auto sol = pm::lp::solve_lp_config(in);
  for (auto& gs : sol.groups) gs.strings.assign(1, pm::lp::WeightedString{ProbeString{0}, 1.0});
  const pr::OnlinePlan plan(in, sol);
  const int n = 20000;
  double first = 0.0;
  for (int t = 0; t < n; ++t) {
    const auto r = pr::run_trial(plan, pr::Algorithm::kGreedy, pm::ArrivalModel::random_order(), 7,
                                 static_cast<std::uint64_t>(t));
    ASSERT_EQ(r.matching.size(), 1U);
    EXPECT_EQ(r.matching[0].arrival, r.order[0]);
    first += r.matching[0].arrival == 0;
  }
  EXPECT_NEAR(first / n, 0.5, 3 * sigma(0.5, n));
}

TEST(OnlineTrial, ZeroPlanMatchesNothing) {
  const auto in = pm::KnownIDInput::from_graph(pm::harness::random_small_graph(2, 3));
  pm::lp::ConfigSolution sol = pm::lp::solve_lp_config(in);
  for (auto& gs : sol.groups) gs.strings.assign(1, pm::lp::WeightedString{ProbeString{}, gs.group.mass});
  const pr::OnlinePlan plan(in, sol);
  for (auto alg : {pr::Algorithm::kGreedy, pr::Algorithm::kOcrs, pr::Algorithm::kRcrs}) {
    const auto r = pr::run_trial(plan, alg, pm::ArrivalModel::random_times(), 1, 1);
    EXPECT_TRUE(r.matching.empty());
    EXPECT_EQ(r.probes, 0U);
  }
}

TEST(OnlineTrial, RcrsRejectsAdversarialOrders) {
  const auto in = two_on_one();
  const pr::OnlinePlan plan(in, pm::lp::solve_lp_config(in));
  EXPECT_THROW(pr::run_trial(plan, pr::Algorithm::kRcrs, pm::ArrivalModel::adversarial({0, 1}), 1, 0), pm::Error);
}

TEST(OnlineTrial, ExactWeightAgreesWithMonteCarlo) {
  for (const auto& inst : pm::harness::generate_suite("random-id(6,21)")) {
    const auto sol = pm::lp::solve_lp_config(inst.input);
    const pr::OnlinePlan plan(inst.input, sol);
    std::vector<std::size_t> order(inst.input.arrivals());
    std::iota(order.rbegin(), order.rend(), 0);
    for (auto alg : {pr::Algorithm::kGreedy, pr::Algorithm::kOcrs}) {
      const double exact = pr::exact_expected_weight(plan, alg, order);
      pm::harness::SimulationOptions so{40000, 13, 0, true};
      const auto rep = pm::harness::simulate(plan, alg, pm::ArrivalModel::adversarial(order), so);
      EXPECT_NEAR(rep.mean, exact, 3.5 * rep.std_error + 1e-12) << inst.name;
    }
    // Under OCRS every element is selected with probability exactly 1/2.
    EXPECT_NEAR(pr::exact_expected_weight(plan, pr::Algorithm::kOcrs, order), sol.objective / 2, 1e-9);
  }
}

TEST(OnlineTrial, WorstFoundOrderIsNoBetterThanIdentity) {
  for (const auto& inst : pm::harness::generate_suite("random-id(10,2)")) {
    const pr::OnlinePlan plan(inst.input, pm::lp::solve_lp_config(inst.input));
    std::vector<std::size_t> id(inst.input.arrivals());
    std::iota(id.begin(), id.end(), 0);
    const auto worst = pr::worst_found_order(plan, pr::Algorithm::kGreedy);
    EXPECT_TRUE(pm::is_permutation_of_n(worst, id.size()));
    EXPECT_LE(pr::exact_expected_weight(plan, pr::Algorithm::kGreedy, worst),
              pr::exact_expected_weight(plan, pr::Algorithm::kGreedy, id) + 1e-15);
  }
}

TEST(OnlineTrial, ArrivalOrdersArePermutations) {
  for (const auto& m : {pm::ArrivalModel::random_order(), pm::ArrivalModel::random_times()}) {
    std::vector<double> times;
    const auto order = pr::arrival_order(m, 9, 4, 2, &times);
    EXPECT_TRUE(pm::is_permutation_of_n(order, 9));
    EXPECT_EQ(order, pr::arrival_order(m, 9, 4, 2));
  }
  EXPECT_THROW(pr::arrival_order(pm::ArrivalModel::adversarial({0, 0}), 2, 1, 1), pm::Error);
}
