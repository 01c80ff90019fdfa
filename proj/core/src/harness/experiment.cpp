#include "probematch/harness/experiment.hpp"

#include <filesystem>
#include <set>
#include <sstream>

#include <json.hpp>

#include "probematch/errors.hpp"
#include "probematch/harness/suites.hpp"
#include "probematch/io.hpp"

namespace probematch::harness {

ArrivalSpec ArrivalSpec::parse(const std::string& text) {
  ArrivalSpec s;
  if (text.rfind("perm:", 0) == 0) {
    s.kind = Kind::kPermutationFile;
    s.path = text.substr(5);
    if (s.path.empty()) throw DataError("perm: needs a file name");
  } else if (text == "random") {
    s.kind = Kind::kRandom;
  } else if (text == "random-order") {
    s.kind = Kind::kRandomOrder;
  } else if (text == "worst-found") {
    s.kind = Kind::kWorstFound;
  } else {
    throw DataError("unknown arrival spec \"" + text + "\"");
  }
  return s;
}

std::string ArrivalSpec::to_string() const {
  switch (kind) {
    case Kind::kPermutationFile:
      return "perm:" + path;
    case Kind::kRandom:
      return "random";
    case Kind::kRandomOrder:
      return "random-order";
    case Kind::kWorstFound:
      return "worst-found";
  }
  return "?";
}

namespace {

std::string resolve(const std::string& path, const std::string& base) {
  if (path.empty() || base.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(base) / path).string();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text, const std::string& base_dir) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("experiment config: ") + e.what());
  }
  static const std::set<std::string> known = {"instance", "solution", "method",  "algorithm",
                                              "arrivals", "trials",   "seed",    "threads",
                                              "output"};
  if (!doc.is_object()) throw DataError("experiment config must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!known.count(it.key())) throw DataError("experiment config: unknown field " + it.key());
  }
  ExperimentConfig cfg;
  try {
    const json& inst = doc.at("instance");
    if (inst.contains("file") == inst.contains("generator")) {
      throw DataError("experiment config: instance needs exactly one of file and generator");
    }
    if (inst.contains("file")) cfg.input_file = resolve(inst.at("file").get<std::string>(), base_dir);
    if (inst.contains("generator")) {
      cfg.generator = inst.at("generator").get<std::string>();
      cfg.instance_index = inst.value("index", std::size_t{0});
    }
    if (doc.contains("solution")) cfg.solution_file = resolve(doc.at("solution").get<std::string>(), base_dir);
    const std::string method = doc.value("method", std::string("enumerate"));
    if (method == "enumerate") {
      cfg.method = lp::LPMethod::kEnumerate;
    } else if (method == "colgen") {
      cfg.method = lp::LPMethod::kColumnGeneration;
    } else {
      throw DataError("experiment config: unknown method " + method);
    }
    cfg.algorithm = probing::parse_algorithm(doc.at("algorithm").get<std::string>());
    cfg.arrivals = ArrivalSpec::parse(doc.value("arrivals", std::string("random")));
    if (cfg.arrivals.kind == ArrivalSpec::Kind::kPermutationFile) {
      cfg.arrivals.path = resolve(cfg.arrivals.path, base_dir);
    }
    const long long trials = doc.at("trials").get<long long>();
    if (trials < 1) throw DataError("experiment config: trials must be at least 1");
    cfg.trials = static_cast<std::size_t>(trials);
    if (!doc.contains("seed")) throw DataError("experiment config: seed is required");
    cfg.seed = doc.at("seed").get<std::uint64_t>();
    cfg.threads = doc.value("threads", std::size_t{0});
    if (doc.contains("output")) cfg.csv_output = resolve(doc.at("output").value("csv", std::string()), base_dir);
  } catch (const json::exception& e) {
    throw DataError(std::string("experiment config: ") + e.what());
  } catch (const Error& e) {
    throw DataError(std::string("experiment config: ") + e.what());
  }
  if (!cfg.generator.empty()) {
    const auto suite = generate_suite(cfg.generator);
    if (cfg.instance_index >= suite.size()) {
      throw DataError("experiment config: generator has no instance " + std::to_string(cfg.instance_index));
    }
  }
  return cfg;
}

KnownIDInput load_instance(const ExperimentConfig& cfg) {
  if (!cfg.input_file.empty()) return io::parse_input(io::read_file(cfg.input_file));
  auto suite = generate_suite(cfg.generator);
  if (cfg.instance_index >= suite.size()) throw DataError("generator instance out of range");
  return std::move(suite[cfg.instance_index].input);
}

std::vector<std::size_t> read_permutation(const std::string& path, std::size_t n) {
  std::string text = io::read_file(path);
  for (char& c : text) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(text);
  std::vector<std::size_t> order;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t pos = 0;
      order.push_back(std::stoul(tok, &pos));
      if (pos != tok.size()) throw DataError("");
    } catch (const std::exception&) {
      throw DataError(path + ": \"" + tok + "\" is not a non-negative integer");
    }
  }
  if (!is_permutation_of_n(order, n)) {
    throw DataError(path + " is not a 0-based permutation of " + std::to_string(n) + " arrivals");
  }
  return order;
}

ArrivalModel resolve_arrivals(const ArrivalSpec& spec, const probing::OnlinePlan& plan,
                              probing::Algorithm alg) {
  const std::size_t n = plan.input().arrivals();
  if (alg == probing::Algorithm::kRcrs && (spec.kind == ArrivalSpec::Kind::kPermutationFile ||
                                           spec.kind == ArrivalSpec::Kind::kWorstFound)) {
    throw DataError("rcrs runs on random arrival times; use --arrivals random");
  }
  switch (spec.kind) {
    case ArrivalSpec::Kind::kPermutationFile:
      return ArrivalModel::adversarial(read_permutation(spec.path, n));
    case ArrivalSpec::Kind::kRandom:
      return ArrivalModel::random_times();
    case ArrivalSpec::Kind::kRandomOrder:
      return ArrivalModel::random_order();
    case ArrivalSpec::Kind::kWorstFound:
      return ArrivalModel::adversarial(probing::worst_found_order(plan, alg));
  }
  return ArrivalModel::random_times();
}

TrialReport run_experiment(const ExperimentConfig& cfg) {
  const std::string context =
      "experiment on " + (cfg.input_file.empty() ? cfg.generator : cfg.input_file) + ": ";
  try {
    if (!cfg.seed) throw DataError("seed is required");
    if (cfg.trials == 0) throw DataError("trials must be at least 1");
    const KnownIDInput in = load_instance(cfg);
    lp::ConfigSolution sol;
    if (!cfg.solution_file.empty()) {
      sol = io::parse_solution(in, io::read_file(cfg.solution_file));
    } else {
      lp::ConfigLPOptions opts;
      opts.method = cfg.method;
      sol = lp::solve_lp_config(in, opts);
    }
    const probing::OnlinePlan plan(in, sol);
    const ArrivalModel arrivals = resolve_arrivals(cfg.arrivals, plan, cfg.algorithm);
    SimulationOptions so;
    so.trials = cfg.trials;
    so.seed = *cfg.seed;
    so.threads = cfg.threads;
    TrialReport rep = simulate(plan, cfg.algorithm, arrivals, so);
    rep.echo.push_back({"arrivals", cfg.arrivals.kind == ArrivalSpec::Kind::kPermutationFile
                                        ? "perm"
                                        : cfg.arrivals.to_string()});
    if (arrivals.kind == ArrivalModel::Kind::kAdversarialPermutation) {
      std::string order;
      for (std::size_t k = 0; k < arrivals.permutation.size(); ++k) {
        order += (k ? " " : "") + std::to_string(arrivals.permutation[k]);
      }
      rep.echo.push_back({"order", order});
    }
    rep.echo.push_back({"instance", cfg.input_file.empty()
                                        ? cfg.generator + "#" + std::to_string(cfg.instance_index)
                                        : std::filesystem::path(cfg.input_file).filename().string()});
    if (!cfg.csv_output.empty()) io::write_file_atomic(cfg.csv_output, report_csv(rep));
    return rep;
  } catch (const DataError& e) {
    throw DataError(context + e.what());
  } catch (const Error& e) {
    throw Error(context + e.what());
  }
}

}  // namespace probematch::harness
