#include "qcirc/fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <map>

#include "qcirc/errors.hpp"

namespace qcirc {

namespace {

const std::map<std::string, const char*>& table() {
  static const std::map<std::string, const char*> t = {
      {"lc", R"({
  "nodes": [0, 1],
  "ground": 0,
  "branches": [
    {"id": 1, "from": 1, "to": 0, "kind": "C", "value": 100.0, "unit": "fF"},
    {"id": 2, "from": 1, "to": 0, "kind": "L", "value": 5.0, "unit": "nH"}
  ]
})"},
      {"transmon", R"({
  "nodes": [0, 1],
  "ground": 0,
  "branches": [
    {"id": 1, "from": 1, "to": 0, "kind": "C", "value": 0.25, "unit": "GHz"},
    {"id": 2, "from": 1, "to": 0, "kind": "JJ", "value": 12.5, "unit": "GHz"}
  ]
})"},
      {"cpb", R"({
  "nodes": [0, 1],
  "ground": 0,
  "branches": [
    {"id": 1, "from": 1, "to": 0, "kind": "C", "value": 5.0, "unit": "GHz"},
    {"id": 2, "from": 1, "to": 0, "kind": "JJ", "value": 5.0, "unit": "GHz"}
  ],
  "offset_charge": [{"node": 1, "ng": 0.5}]
})"},
      {"fluxonium", R"({
  "nodes": [0, 1],
  "ground": 0,
  "branches": [
    {"id": 1, "from": 1, "to": 0, "kind": "C", "value": 1.0, "unit": "GHz"},
    {"id": 2, "from": 1, "to": 0, "kind": "L", "value": 0.58, "unit": "GHz"},
    {"id": 3, "from": 1, "to": 0, "kind": "JJ", "value": 3.43, "unit": "GHz"}
  ],
  "external_flux": [{"loop": 1, "phi": 0.0}]
})"},
      {"squid", R"({
  "nodes": [0, 1],
  "ground": 0,
  "branches": [
    {"id": 1, "from": 1, "to": 0, "kind": "C", "value": 65.0, "unit": "fF"},
    {"id": 2, "from": 1, "to": 0, "kind": "JJ", "value": 8.0, "unit": "GHz"},
    {"id": 3, "from": 1, "to": 0, "kind": "JJ", "value": 8.0, "unit": "GHz"}
  ],
  "external_flux": [{"loop": 1, "phi": 0.0}]
})"},
      {"two_mode_example", R"({
  "nodes": [1, 2, 3],
  "ground": 3,
  "branches": [
    {"id": 1, "from": 1, "to": 3, "kind": "L", "value": 2.0, "unit": "nH"},
    {"id": 2, "from": 2, "to": 3, "kind": "C", "value": 70.0, "unit": "fF"},
    {"id": 3, "from": 1, "to": 3, "kind": "C", "value": 200.0, "unit": "fF"},
    {"id": 4, "from": 2, "to": 1, "kind": "C", "value": 5.0, "unit": "fF"},
    {"id": 5, "from": 2, "to": 3, "kind": "JJ", "value": 15.0, "unit": "GHz"}
  ]
})"},
      {"transmon_resonator", R"({
  "nodes": [0, 1, 2],
  "ground": 0,
  "branches": [
    {"id": 1, "from": 1, "to": 0, "kind": "C", "value": 0.25, "unit": "GHz"},
    {"id": 2, "from": 1, "to": 0, "kind": "JJ", "value": 12.5, "unit": "GHz"},
    {"id": 3, "from": 2, "to": 0, "kind": "C", "value": 250.0, "unit": "fF"},
    {"id": 4, "from": 2, "to": 0, "kind": "L", "value": 1.8, "unit": "nH"},
    {"id": 5, "from": 1, "to": 2, "kind": "C", "value": 4.0, "unit": "fF"}
  ]
})"},
      {"two_qubit", R"({
  "nodes": [0, 1, 2],
  "ground": 0,
  "branches": [
    {"id": 1, "from": 1, "to": 0, "kind": "C", "value": 0.25, "unit": "GHz"},
    {"id": 2, "from": 1, "to": 0, "kind": "JJ", "value": 12.5, "unit": "GHz"},
    {"id": 3, "from": 2, "to": 0, "kind": "C", "value": 0.22, "unit": "GHz"},
    {"id": 4, "from": 2, "to": 0, "kind": "JJ", "value": 13.5, "unit": "GHz"},
    {"id": 5, "from": 1, "to": 2, "kind": "C", "value": 3.0, "unit": "fF"}
  ]
})"},
      {"tunable_coupler", R"({
  "nodes": [0, 1, 2, 3],
  "ground": 0,
  "branches": [
    {"id": 1, "from": 1, "to": 0, "kind": "C", "value": 70.0, "unit": "fF"},
    {"id": 2, "from": 1, "to": 0, "kind": "JJ", "value": 13.0, "unit": "GHz"},
    {"id": 3, "from": 2, "to": 0, "kind": "C", "value": 40.0, "unit": "fF"},
    {"id": 4, "from": 2, "to": 0, "kind": "JJ", "value": 25.0, "unit": "GHz"},
    {"id": 5, "from": 3, "to": 0, "kind": "C", "value": 72.0, "unit": "fF"},
    {"id": 6, "from": 3, "to": 0, "kind": "JJ", "value": 12.5, "unit": "GHz"},
    {"id": 7, "from": 1, "to": 2, "kind": "C", "value": 6.0, "unit": "fF"},
    {"id": 8, "from": 2, "to": 3, "kind": "C", "value": 6.0, "unit": "fF"},
    {"id": 9, "from": 1, "to": 3, "kind": "C", "value": 0.3, "unit": "fF"}
  ]
})"},
      {"gmon", R"({
  "nodes": [0, 1, 2, 3],
  "ground": 0,
  "branches": [
    {"id": 1, "from": 1, "to": 0, "kind": "C", "value": 80.0, "unit": "fF"},
    {"id": 2, "from": 1, "to": 0, "kind": "JJ", "value": 14.0, "unit": "GHz"},
    {"id": 3, "from": 2, "to": 0, "kind": "C", "value": 80.0, "unit": "fF"},
    {"id": 4, "from": 2, "to": 0, "kind": "JJ", "value": 14.0, "unit": "GHz"},
    {"id": 5, "from": 1, "to": 3, "kind": "L", "value": 0.6, "unit": "nH"},
    {"id": 6, "from": 2, "to": 3, "kind": "L", "value": 0.6, "unit": "nH"},
    {"id": 7, "from": 3, "to": 0, "kind": "JJ", "value": 30.0, "unit": "GHz"},
    {"id": 8, "from": 3, "to": 0, "kind": "C", "value": 10.0, "unit": "fF"}
  ],
  "external_flux": [{"loop": 2, "phi": 0.0}]
})"},
      {"floating_pair", R"({
  "nodes": [1, 2],
  "branches": [
    {"id": 1, "from": 1, "to": 2, "kind": "C", "value": 60.0, "unit": "fF"},
    {"id": 2, "from": 1, "to": 2, "kind": "JJ", "value": 14.0, "unit": "GHz"}
  ]
})"},
      {"three_island_chain", R"({
  "nodes": [0, 1, 2, 3],
  "ground": 0,
  "branches": [
    {"id": 1, "from": 1, "to": 3, "kind": "C", "value": 50.0, "unit": "fF"},
    {"id": 2, "from": 2, "to": 3, "kind": "C", "value": 50.0, "unit": "fF"},
    {"id": 3, "from": 1, "to": 2, "kind": "C", "value": 20.0, "unit": "fF"},
    {"id": 4, "from": 3, "to": 0, "kind": "C", "value": 20.0, "unit": "fF"},
    {"id": 5, "from": 1, "to": 0, "kind": "L", "value": 1.2, "unit": "nH"},
    {"id": 6, "from": 2, "to": 0, "kind": "L", "value": 1.2, "unit": "nH"},
    {"id": 7, "from": 3, "to": 0, "kind": "JJ", "value": 10.0, "unit": "GHz"}
  ]
})"},
      {"plaquette", R"({
  "nodes": [1, 2, 3, 4],
  "branches": [
    {"id": 1, "from": 1, "to": 2, "kind": "C", "value": 40.0, "unit": "fF"},
    {"id": 2, "from": 2, "to": 3, "kind": "C", "value": 40.0, "unit": "fF"},
    {"id": 3, "from": 3, "to": 4, "kind": "C", "value": 40.0, "unit": "fF"},
    {"id": 4, "from": 4, "to": 1, "kind": "C", "value": 40.0, "unit": "fF"},
    {"id": 5, "from": 1, "to": 3, "kind": "C", "value": 40.0, "unit": "fF"},
    {"id": 6, "from": 1, "to": 2, "kind": "JJ", "value": 9.0, "unit": "GHz"},
    {"id": 7, "from": 2, "to": 3, "kind": "JJ", "value": 9.0, "unit": "GHz"},
    {"id": 8, "from": 3, "to": 4, "kind": "JJ", "value": 9.0, "unit": "GHz"},
    {"id": 9, "from": 4, "to": 1, "kind": "JJ", "value": 9.0, "unit": "GHz"}
  ]
})"},
  };
  return t;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : table()) names.push_back(k);
  return names;
}

std::string fixture_netlist(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end())
    throw InputError("UnknownFixture", "no built-in circuit named \"" + name + "\"");
  std::string text = it->second;
  if (!text.empty() && text.back() != '\n') text.push_back('\n');
  return text;
}

void write_fixture_files(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& name : fixture_names()) {
    std::ofstream out(std::filesystem::path(dir) / (name + ".json"));
    out << fixture_netlist(name);
  }
}

}  // namespace qcirc
