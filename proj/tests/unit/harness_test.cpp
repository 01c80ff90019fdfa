#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "probematch/errors.hpp"
#include "probematch/harness/acceptance.hpp"
#include "probematch/harness/experiment.hpp"
#include "probematch/harness/plot.hpp"
#include "probematch/harness/report.hpp"
#include "probematch/harness/suites.hpp"
#include "probematch/io.hpp"
#include "probematch/lp/config_lp.hpp"

namespace pm = probematch;
namespace hs = pm::harness;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "probematch_harness_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Suites, ShapesAndReproducibility) {
  const auto fn = hs::generate_suite("star(4)");
  ASSERT_EQ(fn.size(), 1U);
  const auto& g = fn[0].input.type_graph;
  EXPECT_EQ(g.online_count(), 1U);
  EXPECT_EQ(g.offline_count(), 4U);
  EXPECT_EQ(g.online(0).constraint.as<pm::Patience>().limit, 1U);
  for (const auto& e : g.online(0).edges) EXPECT_EQ(e.probability, 0.25);

  const auto rs = hs::generate_suite("random-small(50,7)");
  ASSERT_EQ(rs.size(), 50U);
  for (const auto& inst : rs) {
    const auto& h = inst.input.type_graph;
    EXPECT_LE(h.offline_count(), 4U);
    EXPECT_LE(h.online_count(), 4U);
    for (const auto& v : h.online()) {
      EXPECT_LE(v.constraint.as<pm::Patience>().limit, 2U);
      for (const auto& e : v.edges) {
        EXPECT_GT(e.probability, 0.0);
        EXPECT_LE(e.probability, 1.0);
      }
    }
    EXPECT_TRUE(pm::validate_input(inst.input).empty());
  }
  for (const auto& inst : hs::generate_suite("unbounded-patience(20,7)")) {
    for (const auto& v : inst.input.type_graph.online()) {
      EXPECT_LE(v.degree(), 3U);
      EXPECT_TRUE(v.constraint.is_unbounded(v.degree()));
    }
  }
  for (const auto& inst : hs::generate_suite("random-iid(10,7)")) EXPECT_TRUE(inst.input.is_identical());

  std::string a, b;
  for (const auto& inst : hs::generate_suite("random-id(5,3)")) a += pm::io::dump_input(inst.input);
  for (const auto& inst : hs::generate_suite("random-id(5,3)")) b += pm::io::dump_input(inst.input);
  EXPECT_EQ(a, b);
}

TEST(Suites, UnknownOrMalformed) {
  EXPECT_THROW(hs::generate_suite("nope(1,2)"), pm::DataError);
  EXPECT_THROW(hs::generate_suite("random-small(3)"), pm::DataError);
  EXPECT_THROW(hs::generate_suite("random-small(x,1)"), pm::DataError);
  EXPECT_THROW(hs::generate_suite("star(0)"), pm::DataError);
}

TEST(Report, CsvSchemaAndDeterminism) {
  const auto in = hs::random_id_input(4, 2, false);
  const pm::probing::OnlinePlan plan(in, pm::lp::solve_lp_config(in));
  hs::SimulationOptions one{500, 3, 1, true};
  hs::SimulationOptions many{500, 3, 4, true};
  const auto r1 = hs::simulate(plan, pm::probing::Algorithm::kRcrs, pm::ArrivalModel::random_times(), one);
  const auto r2 = hs::simulate(plan, pm::probing::Algorithm::kRcrs, pm::ArrivalModel::random_times(), many);
  EXPECT_EQ(r1.weights, r2.weights);
  const std::string csv = hs::report_csv(r1);
  EXPECT_EQ(csv, hs::report_csv(r2));
  EXPECT_EQ(csv.rfind("metric,offline,online,value\n", 0), 0U);
  EXPECT_NE(csv.find("\nratio,,,"), std::string::npos);
  EXPECT_EQ(csv.find("runtime"), std::string::npos);
  EXPECT_LE(r1.ci_low, r1.mean);
  EXPECT_GE(r1.ci_high, r1.mean);
  EXPECT_GT(r1.hoeffding, 0.0);
  EXPECT_LE(r1.mean, hs::per_trial_weight_bound(in));
}

TEST(Report, RatioAbsentWithoutReference) {
  hs::TrialReport r;
  r.trials = 1;
  EXPECT_EQ(hs::report_csv(r).find("ratio"), std::string::npos);
  EXPECT_EQ(hs::format_double(0.1), "0.10000000000000001");
}

TEST(Experiment, ConfigValidation) {
  EXPECT_THROW(hs::parse_experiment_config(R"j({"instance": {"generator": "star(3)"}, "algorithm": "ocrs", "trials": 5})j"),
               pm::DataError);
  EXPECT_THROW(hs::parse_experiment_config(
                   R"j({"instance": {"generator": "star(3)"}, "algorithm": "ocrs", "trials": 0, "seed": 1})j"),
               pm::DataError);
  EXPECT_THROW(hs::parse_experiment_config(
                   R"j({"instance": {"generator": "bogus(3)"}, "algorithm": "ocrs", "trials": 1, "seed": 1})j"),
               pm::DataError);
  EXPECT_THROW(hs::parse_experiment_config(
                   R"j({"instance": {"generator": "star(3)"}, "algorithm": "ocrs", "trials": 1, "seed": 1, "extra": 2})j"),
               pm::DataError);
  EXPECT_THROW(hs::ArrivalSpec::parse("sometimes"), pm::DataError);
}

TEST(Experiment, RerunsAreByteIdentical) {
  const auto dir = scratch_dir();
  const std::string cfg_text = R"j({"instance": {"generator": "random-id(4,9)", "index": 2},
    "algorithm": "ocrs", "arrivals": "worst-found", "trials": 1, "seed": 5, "output": {"csv": "out.csv"}})j";
  const auto cfg = hs::parse_experiment_config(cfg_text, dir.string());
  hs::run_experiment(cfg);
  const std::string first = pm::io::read_file((dir / "out.csv").string());
  hs::run_experiment(cfg);
  EXPECT_EQ(pm::io::read_file((dir / "out.csv").string()), first);
  EXPECT_NE(first.find("config.arrivals,,,worst-found"), std::string::npos);
}

TEST(Experiment, PermutationFilesAndRcrsRules) {
  const auto dir = scratch_dir();
  const auto perm = (dir / "perm.txt").string();
  pm::io::write_file_atomic(perm, "2, 0 1\n");
  EXPECT_EQ(hs::read_permutation(perm, 3), (std::vector<std::size_t>{2, 0, 1}));
  EXPECT_THROW(hs::read_permutation(perm, 4), pm::DataError);
  pm::io::write_file_atomic(perm, "1 -1 0");
  EXPECT_THROW(hs::read_permutation(perm, 3), pm::DataError);

  const auto in = hs::random_id_input(1, 0, false);
  const pm::probing::OnlinePlan plan(in, pm::lp::solve_lp_config(in));
  EXPECT_THROW(hs::resolve_arrivals(hs::ArrivalSpec::parse("worst-found"), plan, pm::probing::Algorithm::kRcrs),
               pm::DataError);
}

TEST(Experiment, ErrorsCarryContext) {
  hs::ExperimentConfig cfg;
  cfg.input_file = (scratch_dir() / "does-not-exist.json").string();
  cfg.seed = 1;
  try {
    hs::run_experiment(cfg);
    FAIL() << "expected an error";
  } catch (const pm::DataError& e) {
    EXPECT_NE(std::string(e.what()).find("does-not-exist.json"), std::string::npos);
  }
}

TEST(Plot, HistogramIsWellFormedSvg) {
  const std::vector<double> v = {0, 1, 1, 2, 3, 3, 3};
  const std::string svg = hs::histogram_svg(v, "a < b", 4);
  EXPECT_EQ(svg.rfind("<svg", 0), 0U);
  EXPECT_NE(svg.find("a &lt; b"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(hs::histogram_svg({}, "empty").find("</svg>"), std::string::npos);
}

TEST(Acceptance, TitlesAndLineFormat) {
  for (int i = 1; i <= hs::kCriterionCount; ++i) EXPECT_NE(hs::criterion_title(i), "unknown");
  const auto r = hs::run_criterion(12);
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_EQ(hs::format_result_line(r).rfind("PASS 12 ", 0), 0U);
  EXPECT_FALSE(hs::run_criterion(99).passed);
}
