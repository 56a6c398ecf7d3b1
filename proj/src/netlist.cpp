#include "qcirc/netlist.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include <nlohmann/json.hpp>

#include "qcirc/units.hpp"

namespace qcirc {

using nlohmann::json;

const char* kind_tag(BranchKind k) {
  switch (k) {
    case BranchKind::Capacitor: return "C";
    case BranchKind::Inductor: return "L";
    case BranchKind::Junction: return "JJ";
    case BranchKind::VoltageSource: return "V";
    case BranchKind::CurrentSource: return "I";
  }
  return "?";
}

BranchKind kind_from_tag(const std::string& tag) {
  if (tag == "C") return BranchKind::Capacitor;
  if (tag == "L") return BranchKind::Inductor;
  if (tag == "JJ") return BranchKind::Junction;
  if (tag == "V") return BranchKind::VoltageSource;
  if (tag == "I") return BranchKind::CurrentSource;
  throw InputError("UnknownComponentKind", "unknown component kind: \"" + tag + "\"");
}

double Branch::internal() const {
  namespace u = units;
  switch (kind) {
    case BranchKind::Capacitor:
      if (unit == "fF") return u::cap_from_fF(value);
      // "GHz" declares the charging energy E_C = 1/(8C) of the branch alone.
      if (unit == "GHz") return 1.0 / (8.0 * u::energy_from_GHz(value));
      return value;
    case BranchKind::Inductor:
      if (unit == "nH") return u::ind_from_nH(value);
      // "GHz" declares the inductive energy E_L = 1/L of the branch alone,
      // so the quadratic potential phi^2/(2L) reads (E_L/2) phi^2.
      if (unit == "GHz") return 1.0 / u::energy_from_GHz(value);
      return value;
    case BranchKind::Junction:
      // Canonical form is the junction energy. A junction declared by its
      // inductance L_J has E_J = 1/L_J in these units.
      if (unit == "GHz") return u::energy_from_GHz(value);
      if (unit == "nH") return 1.0 / u::ind_from_nH(value);
      return value;
    case BranchKind::VoltageSource:
      return unit == "V" ? u::volt_from_V(value) : value;
    case BranchKind::CurrentSource:
      return unit == "A" ? u::curr_from_A(value) : value;
  }
  return value;
}

double MutualInductance::internal() const {
  return unit == "nH" ? units::ind_from_nH(value) : value;
}

bool CircuitSpec::operator==(const CircuitSpec& o) const {
  auto branch_eq = [](const Branch& a, const Branch& b) {
    return a.id == b.id && a.from == b.from && a.to == b.to && a.kind == b.kind &&
           a.value == b.value && a.unit == b.unit;
  };
  if (nodes != o.nodes || ground != o.ground || branches.size() != o.branches.size())
    return false;
  for (size_t i = 0; i < branches.size(); ++i)
    if (!branch_eq(branches[i], o.branches[i])) return false;
  if (mutual.size() != o.mutual.size() || external_flux.size() != o.external_flux.size() ||
      offset_charge.size() != o.offset_charge.size())
    return false;
  for (size_t i = 0; i < mutual.size(); ++i)
    if (mutual[i].a != o.mutual[i].a || mutual[i].b != o.mutual[i].b ||
        mutual[i].value != o.mutual[i].value || mutual[i].unit != o.mutual[i].unit)
      return false;
  for (size_t i = 0; i < external_flux.size(); ++i)
    if (external_flux[i].loop != o.external_flux[i].loop ||
        external_flux[i].phi != o.external_flux[i].phi)
      return false;
  for (size_t i = 0; i < offset_charge.size(); ++i)
    if (offset_charge[i].node != o.offset_charge[i].node ||
        offset_charge[i].ng != o.offset_charge[i].ng)
      return false;
  return true;
}

namespace {

[[noreturn]] void rethrow_parse_error(const json::parse_error& e, const std::string& text) {
  // nlohmann reports a byte offset; recover line/col for the error message.
  size_t byte = e.byte > 0 ? e.byte - 1 : 0;
  byte = std::min(byte, text.size());
  int line = 1, col = 1;
  for (size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
  }
  throw SyntaxError(line, col, e.what());
}

void check_positive(const Branch& b) {
  bool source = b.kind == BranchKind::VoltageSource || b.kind == BranchKind::CurrentSource;
  if (!source && !(b.value > 0.0))
    throw InputError("NonPositiveValue",
                     "branch " + std::to_string(b.id) + " has non-positive value");
}

}  // namespace

CircuitSpec parse_netlist(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    rethrow_parse_error(e, text);
  }

  CircuitSpec spec;
  try {
    for (const auto& n : doc.at("nodes")) spec.nodes.push_back(n.get<int>());
    if (doc.contains("ground") && !doc["ground"].is_null())
      spec.ground = doc["ground"].get<int>();
    std::set<int> ids;
    for (const auto& jb : doc.at("branches")) {
      Branch b;
      b.id = jb.at("id").get<int>();
      b.from = jb.at("from").get<int>();
      b.to = jb.at("to").get<int>();
      b.kind = kind_from_tag(jb.at("kind").get<std::string>());
      b.value = jb.at("value").get<double>();
      b.unit = jb.at("unit").get<std::string>();
      if (!ids.insert(b.id).second)
        throw InputError("DuplicateBranchId", "duplicate branch id " + std::to_string(b.id));
      check_positive(b);
      spec.branches.push_back(b);
    }
    if (doc.contains("mutual"))
      for (const auto& jm : doc["mutual"]) {
        MutualInductance m;
        m.a = jm.at("a").get<int>();
        m.b = jm.at("b").get<int>();
        m.value = jm.at("M").get<double>();
        m.unit = jm.value("unit", "nH");
        spec.mutual.push_back(m);
      }
    if (doc.contains("external_flux"))
      for (const auto& jf : doc["external_flux"])
        spec.external_flux.push_back({jf.at("loop").get<int>(), jf.at("phi").get<double>()});
    if (doc.contains("offset_charge"))
      for (const auto& jo : doc["offset_charge"])
        spec.offset_charge.push_back({jo.at("node").get<int>(), jo.at("ng").get<double>()});
  } catch (const json::exception& e) {
    throw InputError("SchemaError", std::string("netlist schema error: ") + e.what());
  }
  return spec;
}

std::string serialize_netlist(const CircuitSpec& spec) {
  json doc;
  doc["nodes"] = spec.nodes;
  doc["ground"] = spec.ground ? json(*spec.ground) : json(nullptr);
  doc["branches"] = json::array();
  for (const auto& b : spec.branches)
    doc["branches"].push_back({{"id", b.id},
                               {"from", b.from},
                               {"to", b.to},
                               {"kind", kind_tag(b.kind)},
                               {"value", b.value},
                               {"unit", b.unit}});
  doc["mutual"] = json::array();
  for (const auto& m : spec.mutual)
    doc["mutual"].push_back({{"a", m.a}, {"b", m.b}, {"M", m.value}, {"unit", m.unit}});
  doc["external_flux"] = json::array();
  for (const auto& f : spec.external_flux)
    doc["external_flux"].push_back({{"loop", f.loop}, {"phi", f.phi}});
  doc["offset_charge"] = json::array();
  for (const auto& o : spec.offset_charge)
    doc["offset_charge"].push_back({{"node", o.node}, {"ng", o.ng}});
  return doc.dump(2) + "\n";
}

const Branch& CircuitGraph::branch_by_id(int id) const {
  for (const auto& b : spec.branches)
    if (b.id == id) return b;
  throw InputError("UnknownBranchId", "no branch with id " + std::to_string(id));
}

double CircuitGraph::offset_charge_at(int node) const {
  for (const auto& o : spec.offset_charge)
    if (o.node == node) return o.ng;
  return 0.0;
}

double CircuitGraph::flux_for_loop(int loop) const {
  for (const auto& f : spec.external_flux)
    if (f.loop == loop) return f.phi;
  return 0.0;
}

CircuitGraph validate(const CircuitSpec& spec, bool auto_ground, bool require_ground) {
  if (spec.nodes.size() < 2)
    throw InputError("TooFewNodes", "circuit needs at least 2 nodes");
  std::set<int> nodeset(spec.nodes.begin(), spec.nodes.end());
  if (nodeset.size() != spec.nodes.size())
    throw InputError("DuplicateNodeId", "duplicate node id in node list");

  for (const auto& b : spec.branches) {
    if (b.from == b.to)
      throw InputError("SelfLoopBranch",
                       "branch " + std::to_string(b.id) + " connects a node to itself");
    if (!nodeset.count(b.from) || !nodeset.count(b.to))
      throw InputError("UnknownNodeId",
                       "branch " + std::to_string(b.id) + " references an undeclared node");
  }

  // Connectivity by BFS over the undirected multigraph.
  std::map<int, std::vector<int>> adj;
  for (const auto& b : spec.branches) {
    adj[b.from].push_back(b.to);
    adj[b.to].push_back(b.from);
  }
  std::set<int> seen;
  std::queue<int> q;
  q.push(spec.nodes.front());
  seen.insert(spec.nodes.front());
  while (!q.empty()) {
    int n = q.front();
    q.pop();
    for (int m : adj[n])
      if (seen.insert(m).second) q.push(m);
  }
  if (seen.size() != spec.nodes.size())
    throw InputError("DisconnectedGraph", "circuit graph is not connected");

  CircuitGraph g;
  g.spec = spec;
  if (spec.ground) {
    if (!nodeset.count(*spec.ground))
      throw InputError("UnknownNodeId", "ground references an undeclared node");
    g.ground = *spec.ground;
  } else if (auto_ground) {
    g.ground = *std::min_element(spec.nodes.begin(), spec.nodes.end());
    g.spec.ground = g.ground;
  } else if (require_ground) {
    throw InputError("NoGroundNode", "no ground node declared and auto-ground disabled");
  } else {
    g.ground = -1;  // floating circuit; CM mode handling applies downstream
  }

  std::vector<int> sorted_nodes(spec.nodes.begin(), spec.nodes.end());
  std::sort(sorted_nodes.begin(), sorted_nodes.end());
  for (int n : sorted_nodes) {
    if (n == g.ground) {
      g.node_class[n] = NodeClass::Ground;
      continue;
    }
    bool cap = false, ind = false;
    for (const auto& b : spec.branches) {
      if (b.from != n && b.to != n) continue;
      if (b.is_capacitive()) cap = true;
      if (b.is_inductive()) ind = true;
    }
    g.node_class[n] = (cap && ind) ? NodeClass::Active : NodeClass::Passive;
    g.coord_index[n] = static_cast<int>(g.coord_nodes.size());
    g.coord_nodes.push_back(n);
  }
  return g;
}

}  // namespace qcirc
