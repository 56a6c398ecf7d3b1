#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <random>

#include "qcirc/fixtures.hpp"
#include "qcirc/graph.hpp"
#include "qcirc/netlist.hpp"

using namespace qcirc;

namespace {

IntMatrix make(std::initializer_list<std::initializer_list<int>> rows) {
  IntMatrix m(rows.size(), rows.begin()->size());
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (int v : row) m(i, j++) = static_cast<int8_t>(v);
    ++i;
  }
  return m;
}

// Oracle: a loop-matrix row is a directed cycle, so its node boundary is zero:
// at every node the signed in/out contributions cancel.
bool rows_are_cycles(const CircuitGraph& g, const SpanningTree& tree, const IntMatrix& fl) {
  std::vector<int> order = tree.branch_order();
  for (int i = 0; i < fl.rows(); ++i) {
    std::map<int, int> boundary;
    for (int j = 0; j < fl.cols(); ++j) {
      if (fl(i, j) == 0) continue;
      const Branch& b = g.branch_by_id(order[j]);
      boundary[b.to] += fl(i, j);
      boundary[b.from] -= fl(i, j);
    }
    for (const auto& [node, v] : boundary)
      if (v != 0) return false;
  }
  return true;
}

// Oracle: with columns ordered twigs-then-links, the cut matrix must be
// (1 | F) and the loop matrix (-F^T | 1).
bool block_structure_ok(const IntMatrix& fc, const IntMatrix& fl) {
  const int nt = static_cast<int>(fc.rows());
  const int nl = static_cast<int>(fl.rows());
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nt; ++j)
      if (fc(i, j) != (i == j ? 1 : 0)) return false;
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nl; ++j)
      if (fl(i, nt + j) != (i == j ? 1 : 0)) return false;
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nt; ++j)
      if (fl(i, j) != -fc(j, nt + i)) return false;
  return true;
}

CircuitSpec random_circuit(std::mt19937& rng, std::vector<int>* tree_branch_ids) {
  std::uniform_int_distribution<int> nn(2, 8);
  const int n = nn(rng);
  CircuitSpec spec;
  for (int i = 0; i < n; ++i) spec.nodes.push_back(i);
  spec.ground = 0;

  auto random_kind = [&](int pick) {
    switch (pick % 5) {
      case 0: return BranchKind::Capacitor;
      case 1: return BranchKind::Inductor;
      case 2: return BranchKind::Junction;
      case 3: return BranchKind::Capacitor;
      default: return BranchKind::Inductor;
    }
  };

  int next_id = 1;
  // Random spanning tree first (guarantees connectivity), then extra links.
  std::vector<int> connected{0};
  std::vector<int> rest;
  for (int i = 1; i < n; ++i) rest.push_back(i);
  std::shuffle(rest.begin(), rest.end(), rng);
  for (int node : rest) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(connected.size()) - 1);
    int anchor = connected[pick(rng)];
    Branch b;
    b.id = next_id++;
    b.from = (rng() & 1) ? node : anchor;
    b.to = (b.from == node) ? anchor : node;
    b.kind = random_kind(static_cast<int>(rng() % 5));
    b.value = 1.0 + (rng() % 100) / 10.0;
    b.unit = "internal";
    spec.branches.push_back(b);
    if (tree_branch_ids) tree_branch_ids->push_back(b.id);
    connected.push_back(node);
  }
  std::uniform_int_distribution<int> extra(0, 6);
  int links = extra(rng);
  std::uniform_int_distribution<int> node_pick(0, n - 1);
  for (int k = 0; k < links; ++k) {
    int a = node_pick(rng), b = node_pick(rng);
    if (a == b) continue;
    Branch br;
    br.id = next_id++;
    br.from = a;
    br.to = b;
    br.kind = random_kind(static_cast<int>(rng() % 5));
    br.value = 1.0 + (rng() % 100) / 10.0;
    br.unit = "internal";
    spec.branches.push_back(br);
  }
  return spec;
}

}  // namespace

TEST_CASE("two-mode example reproduces the reference cut and loop matrices") {
  CircuitSpec spec = parse_netlist(fixture_netlist("two_mode_example"));
  CircuitGraph g = validate(spec);
  // Reference coordinates: the resonator inductor and the transmon shunt
  // capacitor span the tree.
  SpanningTree tree = select_spanning_tree(g, TreePolicy::UserSpecified, {1, 2});
  IntMatrix fc = f_cut_matrix(g, tree);
  IntMatrix fl = f_loop_matrix(g, tree);

  IntMatrix fc_ref = make({{1, 0, 1, -1, 0}, {0, 1, 0, 1, 1}});
  IntMatrix fl_ref = make({{-1, 0, 1, 0, 0}, {1, -1, 0, 1, 0}, {0, -1, 0, 0, 1}});
  CHECK(fc == fc_ref);
  CHECK(fl == fl_ref);
  CHECK(check_orthogonality(fl, fc));
}

TEST_CASE("tree policy prefers junctions and inductors as twigs") {
  CircuitSpec spec = parse_netlist(fixture_netlist("two_mode_example"));
  CircuitGraph g = validate(spec);
  SpanningTree tree = select_spanning_tree(g);
  // Junction (id 5) first, then the inductor (id 1) completes the tree.
  CHECK(tree.twig_ids == std::vector<int>{5, 1});
  CHECK(tree.link_ids == std::vector<int>{2, 3, 4});
}

TEST_CASE("user-specified twig sets are validated") {
  CircuitSpec spec = parse_netlist(fixture_netlist("two_mode_example"));
  CircuitGraph g = validate(spec);
  CHECK_THROWS_AS(select_spanning_tree(g, TreePolicy::UserSpecified, {1}), InputError);
  // Branches 1 and 3 both join nodes 1-3: a loop, not a tree.
  CHECK_THROWS_AS(select_spanning_tree(g, TreePolicy::UserSpecified, {1, 3}), InputError);
}

TEST_CASE("cut/loop structure holds on 500 random circuits") {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 500; ++trial) {
    CAPTURE(trial);
    std::vector<int> seed_tree;
    CircuitSpec spec = random_circuit(rng, &seed_tree);
    CircuitGraph g = validate(spec);

    for (int mode = 0; mode < 2; ++mode) {
      SpanningTree tree = (mode == 0)
                              ? select_spanning_tree(g)
                              : select_spanning_tree(g, TreePolicy::UserSpecified, seed_tree);
      IntMatrix fc = f_cut_matrix(g, tree);
      IntMatrix fl = f_loop_matrix(g, tree);
      REQUIRE(check_orthogonality(fl, fc));
      REQUIRE(block_structure_ok(fc, fl));
      REQUIRE(rows_are_cycles(g, tree, fl));
      REQUIRE(fc.rows() + fl.rows() == fc.cols());
    }
  }
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(elapsed < 5.0);
}
