#include "shapley/io.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "shapley/error.hpp"

namespace shapley::io {
namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string string_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

// Accepts "p/q", "p", or a JSON integer.
Rational rational_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a rational string");
  return Rational::parse(v.get<std::string>());
}

std::uint64_t uint_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

bool bool_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_boolean()) throw ParseError(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

const json& array_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return v;
}

std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

VertexId lookup(const Graph& g, const std::string& name) {
  if (auto v = g.find(name)) return *v;
  throw ParseError("unknown vertex '" + name + "'");
}

}  // namespace

json instance_to_json(const GameInstance& inst) {
  const Graph& g = inst.graph();
  json doc;
  doc["vertices"] = json::array();
  for (const std::string& name : g.names()) doc["vertices"].push_back(name);
  doc["edges"] = json::array();
  for (const Edge& e : g.edges()) doc["edges"].push_back({{"u", g.name(e.u)}, {"v", g.name(e.v)}, {"cost", e.cost.str()}});
  doc["players"] = json::array();
  for (const Player& p : inst.players()) {
    doc["players"].push_back({{"source", g.name(p.source)}, {"sink", g.name(p.sink)}});
  }
  if (inst.declared_sink()) doc["sink"] = g.name(*inst.declared_sink());
  return doc;
}

GameInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  Graph g;
  try {
    for (const json& v : array_field(doc, "vertices")) {
      if (!v.is_string()) throw ParseError("vertex identifiers must be strings");
      g.add_vertex(v.get<std::string>());
    }
    for (const json& e : array_field(doc, "edges")) {
      const Rational cost = rational_field(e, "cost");
      if (cost.sign() < 0) throw ParseError("negative edge cost " + cost.str());
      const VertexId u = lookup(g, string_field(e, "u"));
      const VertexId v = lookup(g, string_field(e, "v"));
      g.add_edge(u, v, cost);
    }
    std::vector<Player> players;
    for (const json& p : array_field(doc, "players")) {
      players.push_back({lookup(g, string_field(p, "source")), lookup(g, string_field(p, "sink"))});
    }
    std::optional<VertexId> sink;
    if (doc.contains("sink") && !doc.at("sink").is_null()) sink = lookup(g, string_field(doc, "sink"));
    return GameInstance(std::move(g), std::move(players), sink);
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

std::string write_instance(const GameInstance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

GameInstance read_instance(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("instance is not valid JSON");
  return instance_from_json(doc);
}

GameInstance load_instance(const std::string& path) { return read_instance(read_file(path)); }

StrategyProfile profile_from_json(const GameInstance& inst, const json& doc) {
  if (!doc.is_object() || !doc.contains("paths") || !doc["paths"].is_array()) {
    throw ParseError("profile needs a \"paths\" array");
  }
  const json& paths = doc["paths"];
  if (paths.size() != inst.player_count()) {
    throw ParseError("profile has " + std::to_string(paths.size()) + " paths for " +
                     std::to_string(inst.player_count()) + " players");
  }
  StrategyProfile prof;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!paths[i].is_array()) throw ParseError("path " + std::to_string(i) + " must be an array of edge indices");
    std::vector<EdgeId> edges;
    for (const json& e : paths[i]) {
      if (!e.is_number_unsigned() || e.get<std::uint64_t>() >= inst.graph().edge_count()) {
        throw ParseError("path " + std::to_string(i) + " has an invalid edge index");
      }
      edges.push_back(e.get<EdgeId>());
    }
    try {
      prof.paths.push_back(path_from_edges(inst.graph(), inst.player(i).source, edges));
    } catch (const InputError& e) {
      throw ParseError(std::string("path ") + std::to_string(i) + ": " + e.what());
    }
  }
  try {
    validate_profile(inst, prof);
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
  return prof;
}

json profile_to_json(const StrategyProfile& prof) {
  json paths = json::array();
  for (const Path& p : prof.paths) paths.push_back(p.edges);
  return json{{"paths", paths}};
}

StrategyProfile load_profile(const GameInstance& inst, const std::string& path) {
  json doc = json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded()) throw ParseError("profile file '" + path + "' is not valid JSON");
  return profile_from_json(inst, doc);
}

std::string instance_digest(const GameInstance& inst) {
  const std::string text = instance_to_json(inst).dump();
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

ReportFile make_report_file(const GameInstance& inst, const Certification& cert) {
  const CertificateReport& r = cert.report;
  ReportFile f;
  f.instance_digest = instance_digest(inst);
  f.opt_cost = r.opt_cost;
  f.nash_cost = r.nash_cost;
  f.ratio = r.actual_ratio;
  f.bound_value = r.bound_value;
  f.n = r.n;
  f.n_half = r.n_half;
  for (const CheckRecord& c : r.checks) {
    f.checks.push_back({c.name, c.lhs, c.rhs, std::string(to_string(c.relation)), std::string(to_string(c.status))});
  }
  f.iterations = cert.trace.iterations;
  f.terminated = cert.trace.terminated;
  f.treeified = cert.treeified;
  f.overall = std::string(to_string(r.overall));
  return f;
}

json report_to_json(const ReportFile& report) {
  json doc;
  doc["instance_digest"] = report.instance_digest;
  doc["opt_cost"] = report.opt_cost.str();
  doc["nash_cost"] = report.nash_cost.str();
  doc["ratio"] = report.ratio.str();
  doc["bound_value"] = report.bound_value.str();
  doc["n"] = report.n;
  doc["n_half"] = report.n_half;
  doc["checks"] = json::array();
  for (const ReportCheck& c : report.checks) {
    doc["checks"].push_back(
        {{"name", c.name}, {"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}, {"relation", c.relation}, {"status", c.status}});
  }
  doc["dynamics"] = {{"iterations", report.iterations}, {"terminated", report.terminated}, {"treeified", report.treeified}};
  doc["overall"] = report.overall;
  return doc;
}

ReportFile report_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("report must be a JSON object");
  ReportFile f;
  f.instance_digest = string_field(doc, "instance_digest");
  f.opt_cost = rational_field(doc, "opt_cost");
  f.nash_cost = rational_field(doc, "nash_cost");
  f.ratio = rational_field(doc, "ratio");
  f.bound_value = rational_field(doc, "bound_value");
  f.n = uint_field(doc, "n");
  f.n_half = uint_field(doc, "n_half");
  for (const json& c : array_field(doc, "checks")) {
    ReportCheck rc{string_field(c, "name"), rational_field(c, "lhs"), rational_field(c, "rhs"),
                   string_field(c, "relation"), string_field(c, "status")};
    if (rc.status != "pass" && rc.status != "fail" && rc.status != "skip") {
      throw ParseError("check status must be pass, fail or skip");
    }
    f.checks.push_back(std::move(rc));
  }
  const json& dyn = field(doc, "dynamics");
  f.iterations = uint_field(dyn, "iterations");
  f.terminated = bool_field(dyn, "terminated");
  f.treeified = bool_field(dyn, "treeified");
  f.overall = string_field(doc, "overall");
  return f;
}

std::string write_report_json(const ReportFile& report) { return report_to_json(report).dump(2) + "\n"; }

std::string write_report_csv(const ReportFile& report) {
  std::ostringstream os;
  os << "# instance_digest=" << report.instance_digest << "\n"
     << "# opt_cost=" << report.opt_cost << " nash_cost=" << report.nash_cost << " ratio=" << report.ratio
     << " bound_value=" << report.bound_value << " n=" << report.n << " n_half=" << report.n_half << "\n"
     << "# iterations=" << report.iterations << " terminated=" << (report.terminated ? "true" : "false")
     << " treeified=" << (report.treeified ? "true" : "false") << " overall=" << report.overall << "\n"
     << "name,lhs,rhs,relation,status\n";
  for (const ReportCheck& c : report.checks) {
    os << csv_field(c.name) << ',' << c.lhs << ',' << c.rhs << ',' << c.relation << ',' << c.status << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace shapley::io
