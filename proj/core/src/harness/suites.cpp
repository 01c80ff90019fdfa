#include "probematch/harness/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "probematch/errors.hpp"
#include "probematch/oracles/erdos_renyi.hpp"
#include "probematch/rng.hpp"

namespace probematch::harness {

namespace {

struct ParsedSpec {
  std::string name;
  std::vector<std::string> args;
};

ParsedSpec parse_spec(const std::string& spec) {
  ParsedSpec out;
  const auto open = spec.find('(');
  if (open == std::string::npos) {
    out.name = spec;
    return out;
  }
  if (spec.back() != ')') throw DataError("malformed suite \"" + spec + "\"");
  out.name = spec.substr(0, open);
  std::stringstream ss(spec.substr(open + 1, spec.size() - open - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    out.args.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

std::uint64_t to_uint(const std::string& s, const std::string& spec) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DataError("suite \"" + spec + "\": expected a non-negative integer, got \"" + s + "\"");
}

double to_real(const std::string& s, const std::string& spec) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DataError("suite \"" + spec + "\": expected a number, got \"" + s + "\"");
}

CounterRng generator(std::uint64_t seed, std::size_t index, std::uint64_t family) {
  return CounterRng(derive_key({seed, index, static_cast<std::uint64_t>(Stream::kGenerator), family}));
}

// Uniform on (0, 1].
double open_unit(CounterRng& rng) { return 1.0 - rng.uniform(); }

std::vector<std::string> ids(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

StochasticGraph random_patience_graph(CounterRng& rng, std::size_t nu, std::size_t nv,
                                      double edge_density) {
  StochasticGraph g(ids("u", nu), {});
  for (std::size_t v = 0; v < nv; ++v) {
    OnlineVertex ov;
    ov.id = "v" + std::to_string(v);
    ov.constraint = ProbingConstraint::patience(1 + rng.below(2));
    for (std::size_t u = 0; u < nu; ++u) {
      if (!rng.bernoulli(edge_density)) continue;
      const double p = open_unit(rng);
      const double w = open_unit(rng);
      ov.edges.push_back({static_cast<OfflineIndex>(u), w, p});
    }
    g.add_online(std::move(ov));
  }
  return g;
}

}  // namespace

StochasticGraph star_graph(std::size_t k, std::size_t patience) {
  if (k == 0) throw DataError("star needs k >= 1");
  OnlineVertex v;
  v.id = "v";
  v.constraint = ProbingConstraint::patience(patience);
  for (std::size_t u = 0; u < k; ++u) {
    v.edges.push_back({static_cast<OfflineIndex>(u), 1.0, 1.0 / static_cast<double>(k)});
  }
  return StochasticGraph(ids("u", k), {std::move(v)});
}

StochasticGraph random_small_graph(std::uint64_t seed, std::size_t index) {
  CounterRng rng = generator(seed, index, 1);
  const std::size_t nu = 1 + rng.below(4);
  const std::size_t nv = 1 + rng.below(4);
  return random_patience_graph(rng, nu, nv, 0.75);
}

StochasticGraph unbounded_patience_graph(std::uint64_t seed, std::size_t index) {
  CounterRng rng = generator(seed, index, 2);
  const std::size_t nu = 1 + rng.below(4);
  const std::size_t nv = 1 + rng.below(3);
  StochasticGraph g(ids("u", nu), {});
  for (std::size_t v = 0; v < nv; ++v) {
    OnlineVertex ov;
    ov.id = "v" + std::to_string(v);
    ov.constraint = ProbingConstraint::unbounded();
    std::vector<OfflineIndex> pool(nu);
    for (std::size_t u = 0; u < nu; ++u) pool[u] = static_cast<OfflineIndex>(u);
    const std::size_t d = 1 + rng.below(std::min<std::size_t>(3, nu));
    for (std::size_t k = 0; k < d; ++k) std::swap(pool[k], pool[k + rng.below(nu - k)]);
    std::sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(d));
    for (std::size_t k = 0; k < d; ++k) ov.edges.push_back({pool[k], open_unit(rng), open_unit(rng)});
    g.add_online(std::move(ov));
  }
  return g;
}

KnownIDInput random_id_input(std::uint64_t seed, std::size_t index, bool identical) {
  CounterRng rng = generator(seed, index, identical ? 4 : 3);
  const std::size_t nu = 1 + rng.below(3);
  const std::size_t nb = 1 + rng.below(3);
  const std::size_t n = 1 + rng.below(4);
  KnownIDInput in;
  in.type_graph = random_patience_graph(rng, nu, nb, 0.8);
  for (auto& v : in.type_graph.online()) v.id = "b" + v.id.substr(1);
  auto draw_row = [&] {
    std::vector<double> w(nb, 0.0);
    double total = 0.0;
    for (auto& x : w) {
      x = rng.bernoulli(0.7) ? open_unit(rng) : 0.0;
      total += x;
    }
    if (total == 0.0) {
      w[rng.below(nb)] = 1.0;
      total = 1.0;
    }
    std::vector<TypeMass> row;
    for (std::size_t b = 0; b < nb; ++b) {
      if (w[b] > 0.0) row.push_back({static_cast<OnlineIndex>(b), w[b] / total});
    }
    return row;
  };
  const auto first = draw_row();
  for (std::size_t i = 0; i < n; ++i) in.distributions.push_back(identical || i == 0 ? first : draw_row());
  in.normalize_rows();
  return in;
}

std::vector<std::string> suite_names() {
  return {"star(k)",        "er(n,p,s)",           "random-small(count,seed)",
          "unbounded-patience(count,seed)", "random-id(count,seed)", "random-iid(count,seed)"};
}

std::vector<Instance> generate_suite(const std::string& spec) {
  const ParsedSpec ps = parse_spec(spec);
  auto need = [&](std::size_t k) {
    if (ps.args.size() != k) {
      throw DataError("suite \"" + spec + "\" takes " + std::to_string(k) + " parameters");
    }
  };
  std::vector<Instance> out;
  if (ps.name == "star") {
    need(1);
    const auto k = to_uint(ps.args[0], spec);
    out.push_back({"star-" + std::to_string(k), KnownIDInput::from_graph(star_graph(k))});
  } else if (ps.name == "er") {
    need(3);
    const auto n = to_uint(ps.args[0], spec);
    const double p = to_real(ps.args[1], spec);
    const auto s = to_uint(ps.args[2], spec);
    out.push_back({"er", KnownIDInput::from_graph(oracles::er_instance(n, p, s))});
  } else if (ps.name == "random-small" || ps.name == "unbounded-patience" ||
             ps.name == "random-id" || ps.name == "random-iid") {
    need(2);
    const auto count = to_uint(ps.args[0], spec);
    const auto seed = to_uint(ps.args[1], spec);
    for (std::size_t i = 0; i < count; ++i) {
      const std::string name = ps.name + "-" + std::to_string(i);
      if (ps.name == "random-small") {
        out.push_back({name, KnownIDInput::from_graph(random_small_graph(seed, i))});
      } else if (ps.name == "unbounded-patience") {
        out.push_back({name, KnownIDInput::from_graph(unbounded_patience_graph(seed, i))});
      } else {
        out.push_back({name, random_id_input(seed, i, ps.name == "random-iid")});
      }
    }
  } else {
    throw DataError("unknown suite \"" + ps.name + "\"");
  }
  return out;
}

}  // namespace probematch::harness
