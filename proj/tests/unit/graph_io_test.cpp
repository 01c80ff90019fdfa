#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "probematch/errors.hpp"
#include "probematch/graph.hpp"
#include "probematch/harness/suites.hpp"
#include "probematch/io.hpp"
#include "probematch/lp/config_lp.hpp"
#include "probematch/sampling.hpp"

namespace pm = probematch;

namespace {

pm::StochasticGraph two_by_two() {
  pm::OnlineVertex a{"a", {{0, 1.0, 0.5}, {1, 2.0, 0.25}}, pm::ProbingConstraint::patience(1)};
  pm::OnlineVertex b{"b", {{1, 1.5, 1.0}}, pm::ProbingConstraint::unbounded()};
  return pm::StochasticGraph({"x", "y"}, {a, b});
}

const char* kGraphDoc = R"({
  "offline": ["x", "y", 7],
  "online": [
    {"id": "a", "edges": [{"u": "x", "w": 1, "p": 0.5}, {"u": 7, "w": 2, "p": 0.25}],
     "constraint": {"kind": "patience", "limit": 1}},
    {"id": "b", "edges": [{"u": "y", "w": 1, "p": 1}],
     "constraint": {"kind": "budget", "budget": 1.0, "costs": {"y": 0.4}}},
    {"id": "c", "edges": [{"u": "x", "w": 1, "p": 0.1}, {"u": "y", "w": 1, "p": 0.2}],
     "constraint": {"kind": "explicit", "strings": [["x", "y"]]}},
    {"id": "d", "edges": [{"u": "x", "w": 3, "p": 0.3}]}
  ]
})";

}  // namespace

TEST(ValidateGraph, WellFormedGraphHasNoViolations) { EXPECT_TRUE(pm::validate_graph(two_by_two()).empty()); }

TEST(ValidateGraph, ProbabilityOutOfRangeNamesTheEdge) {
  auto g = two_by_two();
  g.online()[0].edges[1].probability = 1.3;
  const auto v = pm::validate_graph(g);
  ASSERT_EQ(v.size(), 1U);
  EXPECT_NE(v[0].where.find("y"), std::string::npos);
}

TEST(ValidateGraph, ExplicitFamilyMissingAPermutation) {
  auto g = two_by_two();
  pm::Explicit ex;
  ex.strings = {pm::ProbeString{}, pm::ProbeString{0}, pm::ProbeString{1}, pm::ProbeString{0, 1}};
  g.online()[0].constraint = ex;
  EXPECT_FALSE(pm::validate_graph(g).empty());
}

TEST(ValidateGraph, DuplicateEdgeToSameOfflineVertex) {
  auto g = two_by_two();
  g.online()[1].edges.push_back({1, 1.0, 0.5});
  EXPECT_FALSE(pm::validate_graph(g).empty());
}

TEST(GraphJson, ParsesAllConstraintKinds) {
  std::vector<std::string> warnings;
  const auto g = pm::io::parse_graph(kGraphDoc, &warnings);
  EXPECT_EQ(g.offline_count(), 3U);
  EXPECT_EQ(g.offline_id(2), "7");
  EXPECT_EQ(g.online(0).constraint.as<pm::Patience>().limit, 1U);
  EXPECT_DOUBLE_EQ(g.online(1).constraint.as<pm::Budget>().costs.at(0), 0.4);
  EXPECT_TRUE(g.online(2).constraint.as<pm::Explicit>().strings.count(pm::ProbeString{1, 0}));
  EXPECT_FALSE(warnings.empty());
  EXPECT_TRUE(g.online(3).constraint.is_unbounded(1));
}

TEST(GraphJson, RoundTripIsStable) {
  const auto g = pm::io::parse_graph(kGraphDoc);
  const std::string once = pm::io::dump_graph(g);
  EXPECT_EQ(pm::io::dump_graph(pm::io::parse_graph(once)), once);
}

TEST(GraphJson, RejectsBadDocuments) {
  EXPECT_THROW(pm::io::parse_graph(R"({"offline": ["x", "x"], "online": []})"), pm::DataError);
  EXPECT_THROW(pm::io::parse_graph(R"({"offline": ["x"], "offline": ["y"], "online": []})"), pm::DataError);
  EXPECT_THROW(pm::io::parse_graph(R"({"offline": ["x"], "online": [{"id": "a", "edges": [{"u": "z", "w": 1, "p": 1}]}]})"),
               pm::DataError);
  EXPECT_THROW(pm::io::parse_graph(R"({"offline": ["x"], "online": [{"id": "a", "edges": [{"u": "x", "w": -1, "p": 1}]}]})"),
               pm::DataError);
  EXPECT_THROW(
      pm::io::parse_graph(R"({"offline": ["x", "y"], "online": [{"id": "a", "edges": [{"u": "x", "w": 1, "p": 1}, {"u": "y", "w": 1, "p": 1}],
        "constraint": {"kind": "budget", "budget": 1, "costs": {"x": 0.5}}}]})"),
      pm::DataError);
  EXPECT_THROW(pm::io::parse_graph("{not json"), pm::DataError);
}

TEST(InputJson, DistributionsMustSumToOne) {
  const std::string base = R"({"offline": ["x"], "online": [{"id": "b0", "edges": [{"u": "x", "w": 1, "p": 1}]},
    {"id": "b1", "edges": [{"u": "x", "w": 2, "p": 0.5}]}], "n": 2, "distributions": )";
  const auto in = pm::io::parse_input(base + R"([[{"type": "b0", "prob": 0.3}, {"type": "b1", "prob": 0.7}],
    [{"type": "b1", "prob": 1}]]})");
  EXPECT_EQ(in.arrivals(), 2U);
  EXPECT_DOUBLE_EQ(in.mass(0, 1), 0.7);
  EXPECT_DOUBLE_EQ(in.mass(1, 0), 0.0);
  EXPECT_THROW(pm::io::parse_input(base + R"([[{"type": "b0", "prob": 0.3}], [{"type": "b1", "prob": 1}]]})"),
               pm::DataError);
  EXPECT_THROW(pm::io::parse_input(base + R"([[{"type": "b0", "prob": 1}]]})"), pm::DataError);
  const auto rt = pm::io::parse_input(pm::io::dump_input(in));
  EXPECT_EQ(pm::io::dump_input(rt), pm::io::dump_input(in));
}

TEST(SolutionJson, RoundTripPreservesMassesAndRejectsForeignStrings) {
  const auto in = pm::harness::random_id_input(5, 1, false);
  const auto sol = pm::lp::solve_lp_config(in);
  const std::string doc = pm::io::dump_solution(in, sol, "config-id");
  const auto back = pm::io::parse_solution(in, doc);
  ASSERT_EQ(back.groups.size(), sol.groups.size());
  EXPECT_NEAR(pm::lp::relaxed_value(in, back), sol.objective, 1e-12);
  EXPECT_EQ(pm::io::dump_solution(in, back, "config-id"), doc);
  const auto other = pm::KnownIDInput::from_graph(pm::harness::star_graph(3));
  EXPECT_THROW(pm::io::parse_solution(other, doc), pm::DataError);
}

TEST(Files, AtomicWriteReplacesContent) {
  const auto dir = std::filesystem::temp_directory_path() / "probematch_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "f.txt").string();
  pm::io::write_file_atomic(path, "one");
  pm::io::write_file_atomic(path, "two");
  EXPECT_EQ(pm::io::read_file(path), "two");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_THROW(pm::io::read_file((dir / "missing").string()), pm::DataError);
}

TEST(Sampling, DegenerateProbabilities) {
  pm::OnlineVertex v{"v", {{0, 1.0, 0.0}, {1, 1.0, 1.0}}, pm::ProbingConstraint::unbounded()};
  const pm::StochasticGraph g({"x", "y"}, {v});
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto st = pm::sample_edge_states(g, 9, t);
    EXPECT_EQ(st[0][0], 0);
    EXPECT_EQ(st[0][1], 1);
  }
}

TEST(Sampling, HalfProbabilityFrequencyWithinThreeSigma) {
  const int n = 100000;
  int active = 0;
  for (int t = 0; t < n; ++t) active += pm::EdgeStates(17, static_cast<std::uint64_t>(t)).peek(0, 0, 0.5);
  const double sigma = std::sqrt(0.25 / n);
  EXPECT_NEAR(active / static_cast<double>(n), 0.5, 3 * sigma);
}

TEST(Sampling, DoubleProbeIsRejected) {
  pm::EdgeStates st(1, 1);
  st.probe(0, 0, 0.5);
  EXPECT_THROW(st.probe(0, 0, 0.5), pm::DoubleProbeError);
  EXPECT_EQ(st.reveals(), 1U);
  EXPECT_TRUE(st.was_probed(0, 0));
}

TEST(Sampling, TypeFrequenciesWithinThreeSigma) {
  pm::KnownIDInput in;
  in.type_graph = pm::StochasticGraph({"x"}, {{"b0", {{0, 1.0, 1.0}}, {}}, {"b1", {{0, 1.0, 1.0}}, {}}});
  in.distributions.assign(100000, {{0, 0.3}, {1, 0.7}});
  in.normalize_rows();
  const auto types = pm::sample_types(in, 4, 0);
  double ones = 0;
  for (auto t : types) ones += t;
  const double n = static_cast<double>(types.size());
  EXPECT_NEAR(ones / n, 0.7, 3 * std::sqrt(0.21 / n));
  EXPECT_EQ(types, pm::sample_types(in, 4, 0));
}

TEST(Sampling, PointMassInstantiationReproducesTheGraph) {
  const auto g = pm::harness::random_small_graph(3, 2);
  const auto in = pm::KnownIDInput::from_graph(g);
  auto inst = pm::sample_instantiation(in, 1, 1);
  for (auto& v : inst.graph.online()) v.id = v.id.substr(v.id.find(':') + 1);
  EXPECT_EQ(pm::io::dump_graph(inst.graph), pm::io::dump_graph(g));
  for (std::size_t i = 0; i < in.arrivals(); ++i) EXPECT_EQ(inst.type_of[i], i);
}
