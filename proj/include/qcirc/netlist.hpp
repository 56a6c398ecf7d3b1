#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcirc/errors.hpp"

namespace qcirc {

enum class BranchKind { Capacitor, Inductor, Junction, VoltageSource, CurrentSource };

const char* kind_tag(BranchKind k);               // "C", "L", "JJ", "V", "I"
BranchKind kind_from_tag(const std::string& tag);  // throws InputError("UnknownComponentKind")

// A two-terminal component on a directed branch. `value`/`unit` are kept as
// written in the netlist so serialization round-trips exactly; `internal()`
// returns the canonical dimensionless value (capacitance, inductance, E_J as
// an energy, or source amplitude).
struct Branch {
  int id = 0;
  int from = 0;
  int to = 0;
  BranchKind kind = BranchKind::Capacitor;
  double value = 0.0;
  std::string unit;

  double internal() const;
  bool is_capacitive() const { return kind == BranchKind::Capacitor; }
  bool is_inductive() const {
    return kind == BranchKind::Inductor || kind == BranchKind::Junction;
  }
};

struct MutualInductance {
  int a = 0, b = 0;   // branch ids of the coupled inductors
  double value = 0.0; // as written
  std::string unit;   // "nH"
  double internal() const;
};

struct ExternalFlux {
  int loop = 0;      // fundamental-loop index (link order of the chosen tree)
  double phi = 0.0;  // radians, in reduced-flux-quantum units
};

struct OffsetCharge {
  int node = 0;
  double ng = 0.0;
};

struct CircuitSpec {
  std::vector<int> nodes;
  std::optional<int> ground;
  std::vector<Branch> branches;
  std::vector<MutualInductance> mutual;
  std::vector<ExternalFlux> external_flux;
  std::vector<OffsetCharge> offset_charge;

  bool operator==(const CircuitSpec&) const;
};

CircuitSpec parse_netlist(const std::string& text);
std::string serialize_netlist(const CircuitSpec& spec);

enum class NodeClass { Ground, Active, Passive };

// Validated circuit: ground resolved, connectivity checked, nodes classified.
// Non-ground nodes in ascending id order are the coordinate list used by the
// matrix builders downstream.
struct CircuitGraph {
  CircuitSpec spec;
  int ground = -1;
  std::vector<int> coord_nodes;              // non-ground node ids, ascending
  std::map<int, NodeClass> node_class;
  std::map<int, int> coord_index;            // node id -> coordinate position

  int num_nodes() const { return static_cast<int>(spec.nodes.size()); }
  int num_branches() const { return static_cast<int>(spec.branches.size()); }
  const Branch& branch_by_id(int id) const;
  double offset_charge_at(int node) const;
  double flux_for_loop(int loop) const;
};

// `auto_ground` grounds the lowest-id node when none is declared.
// `require_ground` turns a missing ground into a NoGroundNode error instead of
// allowing a floating circuit (floating circuits keep their CM coordinate).
CircuitGraph validate(const CircuitSpec& spec, bool auto_ground = false,
                      bool require_ground = false);

}  // namespace qcirc
