// probematch command line.
//
// Exit status: 0 on success, 1 when an acceptance check fails, 2 on usage or
// data errors (including solver and size-limit failures on the given input).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "probematch/errors.hpp"
#include "probematch/harness/acceptance.hpp"
#include "probematch/harness/experiment.hpp"
#include "probematch/harness/plot.hpp"
#include "probematch/harness/report.hpp"
#include "probematch/harness/suites.hpp"
#include "probematch/io.hpp"
#include "probematch/lp/config_lp.hpp"
#include "probematch/lp/edge_lps.hpp"
#include "probematch/oracles/bruteforce.hpp"
#include "probematch/oracles/erdos_renyi.hpp"

namespace pm = probematch;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    pm::io::write_file_atomic(path, content);
  }
}

pm::KnownIDInput load_input(const std::string& path) {
  std::vector<std::string> warnings;
  auto in = pm::io::parse_input(pm::io::read_file(path), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << '\n';
  return in;
}

const pm::StochasticGraph& known_graph(const pm::KnownIDInput& in, const std::string& what) {
  if (!in.is_point_mass()) {
    throw pm::DataError(what + " needs a known graph (an input without distributions)");
  }
  return in.type_graph;
}

pm::lp::LPMethod parse_method(const std::string& m) {
  return m == "colgen" ? pm::lp::LPMethod::kColumnGeneration : pm::lp::LPMethod::kEnumerate;
}

struct SolveArgs {
  std::string input, lp = "config", method = "enumerate", out, model_out;
  std::size_t cap = 10000;
};

int cmd_solve(const SolveArgs& a) {
  const auto in = load_input(a.input);
  std::string doc;
  double objective = 0.0;
  if (a.lp == "config" || a.lp == "config-id") {
    if (a.lp == "config") known_graph(in, "--lp config");
    pm::lp::ConfigLPOptions opts;
    opts.method = parse_method(a.method);
    opts.enumerate_cap = a.cap;
    if (!a.model_out.empty() && opts.method == pm::lp::LPMethod::kEnumerate) {
      std::ofstream os(a.model_out);
      pm::lp::write_model(pm::lp::build_lp_config_id(in, a.cap), os);
    }
    const auto sol = pm::lp::solve_lp_config(in, opts);
    objective = sol.objective;
    doc = pm::io::dump_solution(in, sol, a.lp);
  } else {
    if (a.method == "colgen") throw pm::DataError("--method colgen applies to the configuration LPs only");
    const auto& g = known_graph(in, "--lp " + a.lp);
    const auto model = a.lp == "std" ? pm::lp::build_lp_std(g) : pm::lp::build_lp_qc(g);
    if (!a.model_out.empty()) {
      std::ofstream os(a.model_out);
      pm::lp::write_model(model, os);
    }
    const auto sol = pm::lp::solve_edge_lp(g, model);
    objective = sol.objective;
    doc = pm::io::dump_edge_solution(g, sol, a.lp);
  }
  emit(a.out, doc + "\n");
  if (!a.out.empty() && a.out != "-") std::printf("LPOPT %.12g\n", objective);
  return 0;
}

struct SimulateArgs {
  std::string input, sol, method = "enumerate", alg = "ocrs", arrivals = "random", out, svg;
  std::size_t trials = 10000, threads = 0;
  std::uint64_t seed = 0;
};

int cmd_simulate(const SimulateArgs& a) {
  pm::harness::ExperimentConfig cfg;
  cfg.input_file = a.input;
  cfg.solution_file = a.sol;
  cfg.method = parse_method(a.method);
  cfg.algorithm = pm::probing::parse_algorithm(a.alg);
  cfg.arrivals = pm::harness::ArrivalSpec::parse(a.arrivals);
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  const auto rep = pm::harness::run_experiment(cfg);
  emit(a.out, pm::harness::report_csv(rep));
  if (!a.svg.empty()) {
    pm::io::write_file_atomic(a.svg, pm::harness::histogram_svg(rep.weights, "matched weight per trial"));
  }
  if (!a.out.empty() && a.out != "-") {
    std::printf("mean %.6g  stderr %.3g", rep.mean, rep.std_error);
    if (rep.ratio) std::printf("  LPOPT %.6g  ratio %.4f", *rep.lpopt, *rep.ratio);
    std::printf("  (%.2f s)\n", rep.runtime_seconds);
  }
  return 0;
}

int cmd_experiment(const std::string& path) {
  const auto base = std::filesystem::path(path).parent_path().string();
  const auto cfg = pm::harness::parse_experiment_config(pm::io::read_file(path), base);
  const auto rep = pm::harness::run_experiment(cfg);
  if (cfg.csv_output.empty()) std::cout << pm::harness::report_csv(rep);
  return 0;
}

struct BenchmarkArgs {
  std::string input, which = "adaptive", out;
  std::size_t max_states = 20000000;
  double max_work = 5e7;
};

int cmd_benchmark(const BenchmarkArgs& a) {
  const auto in = load_input(a.input);
  const auto& g = known_graph(in, "benchmark");
  double value = 0.0;
  if (a.which == "adaptive") {
    value = pm::oracles::adaptive_opt_bruteforce(g, {a.max_states});
  } else if (a.which == "nonadaptive") {
    value = pm::oracles::nonadaptive_opt_bruteforce(g, {a.max_work});
  } else {
    value = pm::oracles::relaxed_opt(g);
  }
  nlohmann::ordered_json doc;
  doc["benchmark"] = a.which;
  doc["value"] = value;
  emit(a.out, doc.dump(2) + "\n");
  if (!a.out.empty() && a.out != "-") std::printf("%s %.12g\n", a.which.c_str(), value);
  return 0;
}

struct GapArgs {
  std::size_t n = 10000, s = 10, trials = 200, threads = 0;
  double p = 0.001;
  std::uint64_t seed = 0;
  std::string out, svg;
};

int cmd_gap(const GapArgs& a) {
  std::vector<std::string> warnings;
  pm::oracles::er_instance(a.n, a.p, a.s, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  const auto sum = pm::oracles::run_er_experiment(a.n, a.p, a.s, a.trials, a.seed, a.threads);
  emit(a.out, pm::harness::er_summary_csv(sum, a.n, a.p, a.s, a.seed));
  if (!a.svg.empty()) {
    std::vector<double> sizes(sum.nonadaptive_sizes.begin(), sum.nonadaptive_sizes.end());
    pm::io::write_file_atomic(a.svg, pm::harness::histogram_svg(sizes, "non-adaptive matching size", a.s + 1));
  }
  if (!a.out.empty() && a.out != "-") {
    std::printf("adaptive %.4f  non-adaptive %.4f  closed form %.4f  ratio %.4f\n", sum.adaptive_mean,
                sum.nonadaptive_mean, sum.balanced_closed_form, sum.ratio);
  }
  return 0;
}

struct SuiteArgs {
  std::vector<int> ids;
  pm::harness::AcceptanceOptions opts;
};

int cmd_suite(const SuiteArgs& a) {
  bool all = true;
  std::vector<int> ids = a.ids;
  if (ids.empty()) {
    for (int i = 1; i <= pm::harness::kCriterionCount; ++i) ids.push_back(i);
  }
  for (int id : ids) {
    const auto r = pm::harness::run_criterion(id, a.opts);
    std::printf("%s (%.2f s)\n", pm::harness::format_result_line(r).c_str(), r.seconds);
    std::fflush(stdout);
    all = all && r.passed;
  }
  return all ? 0 : kExitFail;
}

int cmd_generate(const std::string& spec, const std::string& dir) {
  const auto suite = pm::harness::generate_suite(spec);
  std::filesystem::create_directories(dir);
  for (const auto& inst : suite) {
    const auto path = (std::filesystem::path(dir) / (inst.name + ".json")).string();
    pm::io::write_file_atomic(path, pm::io::dump_input(inst.input) + "\n");
    std::printf("%s\n", path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online stochastic bipartite matching with probe-commit"};
  app.require_subcommand(1);
  int rc = 0;

  SolveArgs solve;
  auto* s = app.add_subcommand("solve-lp", "Solve an LP relaxation of an input");
  s->add_option("--input", solve.input, "graph or known i.d. input (JSON)")->required()->check(CLI::ExistingFile);
  s->add_option("--lp", solve.lp, "config | config-id | std | qc")
      ->check(CLI::IsMember({"config", "config-id", "std", "qc"}));
  s->add_option("--method", solve.method, "enumerate | colgen")->check(CLI::IsMember({"enumerate", "colgen"}));
  s->add_option("--cap", solve.cap, "string enumeration cap per vertex");
  s->add_option("--out", solve.out, "solution JSON (default stdout)");
  s->add_option("--model-out", solve.model_out, "also write the LP model as text");
  s->callback([&] { rc = cmd_solve(solve); });

  SimulateArgs sim;
  auto* m = app.add_subcommand("simulate", "Monte Carlo run of an online algorithm");
  m->add_option("--input", sim.input, "graph or known i.d. input (JSON)")->required()->check(CLI::ExistingFile);
  m->add_option("--sol", sim.sol, "configuration LP solution; solved on the fly when absent")
      ->check(CLI::ExistingFile);
  m->add_option("--method", sim.method, "LP method when solving on the fly")
      ->check(CLI::IsMember({"enumerate", "colgen"}));
  m->add_option("--alg", sim.alg, "greedy | ocrs | rcrs")->check(CLI::IsMember({"greedy", "ocrs", "rcrs"}));
  m->add_option("--arrivals", sim.arrivals, "perm:FILE | random | random-order | worst-found");
  m->add_option("--trials", sim.trials, "number of trials")->check(CLI::PositiveNumber);
  m->add_option("--seed", sim.seed, "seed")->required();
  m->add_option("--threads", sim.threads, "worker threads (0 = hardware)");
  m->add_option("--out", sim.out, "CSV report (default stdout)");
  m->add_option("--svg", sim.svg, "histogram of per-trial weights");
  m->callback([&] { rc = cmd_simulate(sim); });

  std::string config;
  auto* e = app.add_subcommand("experiment", "Run an experiment from a JSON config");
  e->add_option("--config", config, "experiment config")->required()->check(CLI::ExistingFile);
  e->callback([&] { rc = cmd_experiment(config); });

  BenchmarkArgs bench;
  auto* b = app.add_subcommand("benchmark", "Exact benchmark value of a small known graph");
  b->add_option("--input", bench.input, "graph (JSON)")->required()->check(CLI::ExistingFile);
  b->add_option("--which", bench.which, "adaptive | nonadaptive | relaxed")
      ->check(CLI::IsMember({"adaptive", "nonadaptive", "relaxed"}));
  b->add_option("--max-states", bench.max_states, "memo limit of the adaptive search");
  b->add_option("--max-work", bench.max_work, "work limit of the non-adaptive search");
  b->add_option("--out", bench.out, "value JSON (default stdout)");
  b->callback([&] { rc = cmd_benchmark(bench); });

  GapArgs gap;
  auto* g = app.add_subcommand("adaptivity-gap", "Adaptive vs non-adaptive matching on the random instance");
  g->add_option("--n", gap.n, "online vertices");
  g->add_option("--p", gap.p, "edge probability")->check(CLI::Range(0.0, 1.0));
  g->add_option("--s", gap.s, "offline vertices")->check(CLI::PositiveNumber);
  g->add_option("--trials", gap.trials, "trials")->check(CLI::PositiveNumber);
  g->add_option("--seed", gap.seed, "seed");
  g->add_option("--threads", gap.threads, "worker threads (0 = hardware)");
  g->add_option("--out", gap.out, "CSV (default stdout)");
  g->add_option("--svg", gap.svg, "histogram of non-adaptive sizes");
  g->callback([&] { rc = cmd_gap(gap); });

  SuiteArgs suite;
  auto* a = app.add_subcommand("suite", "Run the acceptance checks; exits 1 on any failure");
  a->add_option("--criterion", suite.ids, "criterion (repeatable; default all)")
      ->check(CLI::Range(1, pm::harness::kCriterionCount));
  a->add_option("--seed", suite.opts.seed, "master seed");
  a->add_option("--threads", suite.opts.threads, "worker threads (0 = hardware)");
  a->add_option("--trials", suite.opts.mc_trials, "Monte Carlo trials per estimate")->check(CLI::PositiveNumber);
  a->callback([&] { rc = cmd_suite(suite); });

  std::string gen_spec, gen_dir = ".";
  auto* n = app.add_subcommand("generate", "Write the instances of a generator family as JSON");
  n->add_option("--suite", gen_spec, "e.g. random-small(50,7) or star(4)")->required();
  n->add_option("--out-dir", gen_dir, "directory");
  n->callback([&] { rc = cmd_generate(gen_spec, gen_dir); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  } catch (const pm::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  }
  return rc;
}
