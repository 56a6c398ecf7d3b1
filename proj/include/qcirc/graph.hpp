#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcirc/netlist.hpp"

namespace qcirc {

// All graph algebra is exact integer arithmetic.
using IntMatrix = Eigen::Matrix<int8_t, Eigen::Dynamic, Eigen::Dynamic>;

enum class TreePolicy { PreferInductiveTwigs, UserSpecified };

struct SpanningTree {
  std::vector<int> twig_ids;  // N-1 branch ids, in tree order
  std::vector<int> link_ids;  // B-N+1 branch ids, ascending id
  TreePolicy policy = TreePolicy::PreferInductiveTwigs;

  // Global branch ordering used for matrix columns: twigs first, then links.
  std::vector<int> branch_order() const;
  std::string serialize() const;
};

// Greedy deterministic tree construction. Branch priority: junctions, then
// linear inductors, then sources, then capacitors; ties broken by ascending
// branch id. With `user_twigs` the given ids are verified to form a tree.
SpanningTree select_spanning_tree(const CircuitGraph& graph,
                                  TreePolicy policy = TreePolicy::PreferInductiveTwigs,
                                  const std::vector<int>& user_twigs = {});

// Fundamental cutset matrix, (N-1) x B. Row i is the cutset obtained by
// removing twig i from the tree; the cut is oriented so the twig entry is +1.
IntMatrix f_cut_matrix(const CircuitGraph& graph, const SpanningTree& tree);

// Fundamental loop matrix, (B-N+1) x B. Row i is the unique loop closed by
// link i through the tree, oriented along the link; the link entry is +1.
IntMatrix f_loop_matrix(const CircuitGraph& graph, const SpanningTree& tree);

// Exact integer check of FL * FC^T == 0. Throws on shape mismatch.
bool check_orthogonality(const IntMatrix& floop, const IntMatrix& fcut);

}  // namespace qcirc
