#include "probematch/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "probematch/errors.hpp"

namespace probematch::io {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

json parse_strict(const std::string& text) {
  std::vector<std::set<std::string>> keys;
  json::parser_callback_t cb = [&keys](int, json::parse_event_t ev, json& parsed) {
    switch (ev) {
      case json::parse_event_t::object_start:
        keys.emplace_back();
        break;
      case json::parse_event_t::object_end:
        keys.pop_back();
        break;
      case json::parse_event_t::key:
        if (!keys.back().insert(parsed.get<std::string>()).second) {
          throw DataError("duplicate key \"" + parsed.get<std::string>() + "\"");
        }
        break;
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text, cb);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
}

std::string id_of(const json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
  throw DataError(what + " must be a string or integer id");
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw DataError(where + " must be an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw DataError(where + " lacks \"" + name + "\"");
  return *it;
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw DataError(what + " must be a number");
  return j.get<double>();
}

ProbingConstraint parse_constraint(const json& c, const OnlineVertex& v, const StochasticGraph& g,
                                   std::vector<std::string>* warnings) {
  const std::string where = "constraint of online vertex " + v.id;
  const json& kind = field(c, "kind", where);
  if (!kind.is_string()) throw DataError(where + ": kind must be a string");
  const std::string k = kind.get<std::string>();
  auto local = [&](const json& uid) -> EdgeIndex {
    const std::string id = id_of(uid, where + " edge reference");
    const auto u = g.find_offline(id);
    const auto e = u ? v.edge_to(*u) : std::nullopt;
    if (!e) throw DataError(where + " references " + id + ", which is not a neighbour");
    return *e;
  };
  if (k == "patience") {
    auto it = c.find("limit");
    if (it == c.end() || it->is_null()) return ProbingConstraint::unbounded();
    if (!it->is_number_integer() || it->get<long long>() < 0) {
      throw DataError(where + ": limit must be a non-negative integer");
    }
    return ProbingConstraint::patience(static_cast<std::size_t>(it->get<long long>()));
  }
  if (k == "budget") {
    Budget b;
    b.budget = number(field(c, "budget", where), where + " budget");
    b.costs.assign(v.degree(), -1.0);
    const json& costs = field(c, "costs", where);
    if (!costs.is_object()) throw DataError(where + ": costs must be an object keyed by offline id");
    for (auto it = costs.begin(); it != costs.end(); ++it) {
      b.costs[local(json(it.key()))] = number(it.value(), where + " cost");
    }
    for (std::size_t e = 0; e < v.degree(); ++e) {
      if (b.costs[e] < 0.0) {
        throw DataError(where + ": missing or negative cost for edge to " +
                        g.offline_id(v.edges[e].offline));
      }
    }
    return b;
  }
  if (k == "explicit") {
    Explicit ex;
    const json& strings = field(c, "strings", where);
    if (!strings.is_array()) throw DataError(where + ": strings must be an array");
    for (const auto& s : strings) {
      if (!s.is_array()) throw DataError(where + ": each string must be an array of offline ids");
      ProbeString ps;
      for (const auto& uid : s) ps.push_back(local(uid));
      std::set<EdgeIndex> seen(ps.begin(), ps.end());
      if (seen.size() != ps.size()) throw DataError(where + ": string repeats an edge");
      ex.strings.insert(std::move(ps));
    }
    const std::size_t added = canonicalize(ex);
    if (added > 0 && warnings) {
      warnings->push_back(where + ": added " + std::to_string(added) +
                          " strings to close the family under substrings and permutations");
    }
    return ex;
  }
  throw DataError(where + ": unknown kind \"" + k + "\"");
}

StochasticGraph graph_from_json(const json& doc, std::vector<std::string>* warnings) {
  if (!doc.is_object()) throw DataError("graph document must be an object");
  StochasticGraph g;
  const json& offline = field(doc, "offline", "graph");
  if (!offline.is_array()) throw DataError("\"offline\" must be an array");
  for (const auto& id : offline) {
    const std::string s = id_of(id, "offline id");
    if (g.find_offline(s)) throw DataError("duplicate offline id " + s);
    g.add_offline(s);
  }
  const json& online = field(doc, "online", "graph");
  if (!online.is_array()) throw DataError("\"online\" must be an array");
  for (const auto& jv : online) {
    OnlineVertex v;
    v.id = id_of(field(jv, "id", "online vertex"), "online id");
    if (g.find_online(v.id)) throw DataError("duplicate online id " + v.id);
    const std::string where = "online vertex " + v.id;
    auto edges = jv.find("edges");
    if (edges != jv.end()) {
      if (!edges->is_array()) throw DataError(where + ": edges must be an array");
      for (const auto& je : *edges) {
        const std::string uid = id_of(field(je, "u", where + " edge"), where + " edge endpoint");
        const auto u = g.find_offline(uid);
        if (!u) throw DataError(where + " has an edge to unknown offline vertex " + uid);
        if (v.edge_to(*u)) throw DataError(where + " lists offline vertex " + uid + " twice");
        Edge e;
        e.offline = *u;
        e.weight = number(field(je, "w", where + " edge"), where + " weight");
        e.probability = number(field(je, "p", where + " edge"), where + " probability");
        v.edges.push_back(e);
      }
    }
    auto c = jv.find("constraint");
    if (c != jv.end() && !c->is_null()) v.constraint = parse_constraint(*c, v, g, warnings);
    g.add_online(std::move(v));
  }
  return g;
}

void throw_violations(const std::vector<Violation>& vs) {
  if (vs.empty()) return;
  std::string msg = "invalid input:";
  for (const auto& v : vs) msg += "\n  " + v.where + ": " + v.rule;
  throw DataError(msg);
}

ojson constraint_to_json(const StochasticGraph& g, const OnlineVertex& v) {
  ojson c;
  const auto& k = v.constraint;
  if (k.is<Patience>()) {
    c["kind"] = "patience";
    if (k.as<Patience>().limit != kUnboundedPatience) c["limit"] = k.as<Patience>().limit;
  } else if (k.is<Budget>()) {
    c["kind"] = "budget";
    c["budget"] = k.as<Budget>().budget;
    ojson costs = ojson::object();
    for (std::size_t e = 0; e < v.degree(); ++e) {
      costs[g.offline_id(v.edges[e].offline)] = k.as<Budget>().costs[e];
    }
    c["costs"] = costs;
  } else if (k.is<Explicit>()) {
    c["kind"] = "explicit";
    ojson strings = ojson::array();
    for (const auto& s : k.as<Explicit>().strings) {
      ojson js = ojson::array();
      for (EdgeIndex e : s) js.push_back(g.offline_id(v.edges[e].offline));
      strings.push_back(js);
    }
    c["strings"] = strings;
  } else {
    throw UnsupportedConstraint("oracle-backed constraints cannot be serialized");
  }
  return c;
}

ojson graph_to_json(const StochasticGraph& g) {
  ojson doc;
  doc["offline"] = g.offline_ids();
  ojson online = ojson::array();
  for (const auto& v : g.online()) {
    ojson jv;
    jv["id"] = v.id;
    ojson edges = ojson::array();
    for (const auto& e : v.edges) {
      edges.push_back(ojson{{"u", g.offline_id(e.offline)}, {"w", e.weight}, {"p", e.probability}});
    }
    jv["edges"] = edges;
    jv["constraint"] = constraint_to_json(g, v);
    online.push_back(jv);
  }
  doc["online"] = online;
  return doc;
}

}  // namespace

StochasticGraph parse_graph(const std::string& text, std::vector<std::string>* warnings) {
  StochasticGraph g = graph_from_json(parse_strict(text), warnings);
  throw_violations(validate_graph(g));
  return g;
}

KnownIDInput parse_input(const std::string& text, std::vector<std::string>* warnings) {
  const json doc = parse_strict(text);
  StochasticGraph g = graph_from_json(doc, warnings);
  auto dist = doc.find("distributions");
  if (dist == doc.end()) {
    if (doc.contains("n")) throw DataError("\"n\" given without \"distributions\"");
    throw_violations(validate_graph(g));
    return KnownIDInput::from_graph(std::move(g));
  }
  if (!dist->is_array()) throw DataError("\"distributions\" must be an array");
  KnownIDInput in;
  for (std::size_t i = 0; i < dist->size(); ++i) {
    const json& row = (*dist)[i];
    const std::string where = "distribution of arrival " + std::to_string(i);
    if (!row.is_array()) throw DataError(where + " must be an array");
    std::vector<TypeMass> r;
    for (const auto& jm : row) {
      const std::string tid = id_of(field(jm, "type", where), where + " type");
      const auto b = g.find_online(tid);
      if (!b) throw DataError(where + " references unknown type node " + tid);
      const double prob = number(field(jm, "prob", where), where + " prob");
      r.push_back({*b, prob});
    }
    in.distributions.push_back(std::move(r));
  }
  if (auto n = doc.find("n"); n != doc.end()) {
    if (!n->is_number_integer() || n->get<long long>() != static_cast<long long>(in.arrivals())) {
      throw DataError("\"n\" does not match the number of distribution rows");
    }
  }
  in.type_graph = std::move(g);
  in.normalize_rows();
  throw_violations(validate_input(in));
  return in;
}

std::string dump_graph(const StochasticGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

std::string dump_input(const KnownIDInput& in) {
  ojson doc = graph_to_json(in.type_graph);
  doc["n"] = in.arrivals();
  ojson rows = ojson::array();
  for (const auto& row : in.distributions) {
    ojson jr = ojson::array();
    for (const auto& tm : row) {
      jr.push_back(ojson{{"type", in.type_graph.online(tm.type).id}, {"prob", tm.prob}});
    }
    rows.push_back(jr);
  }
  doc["distributions"] = rows;
  return doc.dump(2) + "\n";
}

std::string dump_solution(const KnownIDInput& in, const lp::ConfigSolution& sol,
                          const std::string& lp_name) {
  const auto& g = in.type_graph;
  ojson doc;
  doc["lp"] = lp_name;
  doc["objective"] = sol.objective;
  doc["dual_objective"] = sol.dual_objective;
  doc["columns"] = sol.columns;
  doc["rounds"] = sol.rounds;
  ojson alpha = ojson::object();
  for (std::size_t u = 0; u < sol.alpha.size(); ++u) {
    alpha[g.offline_id(static_cast<OfflineIndex>(u))] = sol.alpha[u];
  }
  doc["alpha"] = alpha;
  const auto xt = lp::induced_edge_variables(in, sol);
  ojson groups = ojson::array();
  for (std::size_t gi = 0; gi < sol.groups.size(); ++gi) {
    const auto& gs = sol.groups[gi];
    const OnlineVertex& v = g.online(gs.group.type);
    ojson jg;
    jg["arrival"] = gs.group.arrival;
    jg["online"] = v.id;
    jg["mass"] = gs.group.mass;
    jg["beta"] = gs.beta;
    ojson strings = ojson::array();
    for (const auto& ws : gs.strings) {
      ojson edges = ojson::array();
      for (EdgeIndex e : ws.string) edges.push_back(g.offline_id(v.edges[e].offline));
      strings.push_back(ojson{{"edges", edges}, {"x", ws.mass}});
    }
    jg["strings"] = strings;
    ojson ev = ojson::object();
    for (std::size_t e = 0; e < v.degree(); ++e) ev[g.offline_id(v.edges[e].offline)] = xt[gi][e];
    jg["edge_vars"] = ev;
    groups.push_back(jg);
  }
  doc["groups"] = groups;
  return doc.dump(2) + "\n";
}

lp::ConfigSolution parse_solution(const KnownIDInput& in, const std::string& text) {
  const json doc = parse_strict(text);
  const auto& g = in.type_graph;
  if (auto kind = doc.find("lp"); kind != doc.end() && kind->is_string()) {
    const auto k = kind->get<std::string>();
    if (k != "config" && k != "config-id") {
      throw DataError("solution is for the " + k + " LP; online algorithms need a configuration LP");
    }
  }
  lp::ConfigSolution sol;
  sol.objective = number(field(doc, "objective", "solution"), "objective");
  if (auto d = doc.find("dual_objective"); d != doc.end()) sol.dual_objective = number(*d, "dual");
  if (auto c = doc.find("columns"); c != doc.end() && c->is_number_unsigned()) sol.columns = c->get<std::size_t>();
  if (auto r = doc.find("rounds"); r != doc.end() && r->is_number_unsigned()) sol.rounds = r->get<std::size_t>();
  sol.alpha.assign(g.offline_count(), 0.0);
  if (auto a = doc.find("alpha"); a != doc.end() && a->is_object()) {
    for (auto it = a->begin(); it != a->end(); ++it) {
      const auto u = g.find_offline(it.key());
      if (!u) throw DataError("alpha references unknown offline vertex " + it.key());
      sol.alpha[*u] = number(it.value(), "alpha");
    }
  }
  const auto expected = lp::config_groups(in);
  const json& groups = field(doc, "groups", "solution");
  if (!groups.is_array() || groups.size() != expected.size()) {
    throw DataError("solution groups do not match the input's arrivals and types");
  }
  for (std::size_t gi = 0; gi < expected.size(); ++gi) {
    const json& jg = groups[gi];
    const std::string where = "solution group " + std::to_string(gi);
    const auto arrival = field(jg, "arrival", where).get<std::size_t>();
    const std::string online = id_of(field(jg, "online", where), where + " online");
    if (arrival != expected[gi].arrival || g.online(expected[gi].type).id != online) {
      throw DataError(where + " does not match the input");
    }
    lp::GroupSolution gs;
    gs.group = expected[gi];
    if (auto b = jg.find("beta"); b != jg.end()) gs.beta = number(*b, where + " beta");
    const OnlineVertex& v = g.online(expected[gi].type);
    for (const auto& js : field(jg, "strings", where)) {
      ProbeString s;
      for (const auto& uid : field(js, "edges", where)) {
        const auto u = g.find_offline(id_of(uid, where + " edge"));
        const auto e = u ? v.edge_to(*u) : std::nullopt;
        if (!e) throw DataError(where + " string uses an edge that " + v.id + " does not have");
        s.push_back(*e);
      }
      if (!membership(v.constraint, s)) {
        throw DataError(where + " string " + s.to_string() + " violates the probing constraint");
      }
      gs.strings.push_back({std::move(s), number(field(js, "x", where), where + " x")});
    }
    sol.groups.push_back(std::move(gs));
  }
  return sol;
}

std::string dump_edge_solution(const StochasticGraph& g, const lp::EdgeLPSolution& sol,
                               const std::string& lp_name) {
  ojson doc;
  doc["lp"] = lp_name;
  doc["objective"] = sol.objective;
  doc["dual_objective"] = sol.dual_objective;
  ojson edges = ojson::array();
  for (std::size_t v = 0; v < g.online_count(); ++v) {
    for (std::size_t k = 0; k < g.online(v).degree(); ++k) {
      edges.push_back(ojson{{"u", g.offline_id(g.online(v).edges[k].offline)},
                            {"v", g.online(v).id},
                            {"x", sol.x[v][k]}});
    }
  }
  doc["edges"] = edges;
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw DataError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw DataError("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

}  // namespace probematch::io
