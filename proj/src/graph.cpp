#include "qcirc/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace qcirc {

std::vector<int> SpanningTree::branch_order() const {
  std::vector<int> order = twig_ids;
  order.insert(order.end(), link_ids.begin(), link_ids.end());
  return order;
}

std::string SpanningTree::serialize() const {
  std::ostringstream os;
  os << "twigs:";
  for (int id : twig_ids) os << ' ' << id;
  os << " links:";
  for (int id : link_ids) os << ' ' << id;
  return os.str();
}

namespace {

int branch_priority(BranchKind k) {
  switch (k) {
    case BranchKind::Junction: return 0;
    case BranchKind::Inductor: return 1;
    case BranchKind::VoltageSource:
    case BranchKind::CurrentSource: return 2;
    case BranchKind::Capacitor: return 3;
  }
  return 4;
}

struct UnionFind {
  std::map<int, int> parent;
  int find(int x) {
    if (!parent.count(x)) parent[x] = x;
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

SpanningTree select_spanning_tree(const CircuitGraph& graph, TreePolicy policy,
                                  const std::vector<int>& user_twigs) {
  SpanningTree tree;
  tree.policy = policy;
  const auto& branches = graph.spec.branches;
  const int need = graph.num_nodes() - 1;

  if (policy == TreePolicy::UserSpecified) {
    UnionFind uf;
    std::set<int> twigset(user_twigs.begin(), user_twigs.end());
    if (static_cast<int>(twigset.size()) != need)
      throw InputError("InvalidUserTree", "user tree must have N-1 distinct branch ids");
    for (int id : user_twigs) {
      const Branch& b = graph.branch_by_id(id);
      if (!uf.unite(b.from, b.to))
        throw InputError("InvalidUserTree", "user branch set contains a loop");
      tree.twig_ids.push_back(id);
    }
    for (const auto& b : branches)
      if (!twigset.count(b.id)) tree.link_ids.push_back(b.id);
    std::sort(tree.link_ids.begin(), tree.link_ids.end());
    return tree;
  }

  std::vector<const Branch*> order;
  for (const auto& b : branches) order.push_back(&b);
  std::stable_sort(order.begin(), order.end(), [](const Branch* a, const Branch* b) {
    int pa = branch_priority(a->kind), pb = branch_priority(b->kind);
    return pa != pb ? pa < pb : a->id < b->id;
  });

  UnionFind uf;
  std::set<int> twigset;
  for (const Branch* b : order)
    if (uf.unite(b->from, b->to)) {
      tree.twig_ids.push_back(b->id);
      twigset.insert(b->id);
    }
  if (static_cast<int>(tree.twig_ids.size()) != need)
    throw InputError("DisconnectedGraph", "graph is not connected");
  for (const auto& b : branches)
    if (!twigset.count(b.id)) tree.link_ids.push_back(b.id);
  std::sort(tree.link_ids.begin(), tree.link_ids.end());
  return tree;
}

IntMatrix f_cut_matrix(const CircuitGraph& graph, const SpanningTree& tree) {
  const int n_twigs = static_cast<int>(tree.twig_ids.size());
  const int n_b = graph.num_branches();
  IntMatrix fc = IntMatrix::Zero(n_twigs, n_b);
  std::vector<int> order = tree.branch_order();

  for (int i = 0; i < n_twigs; ++i) {
    const Branch& twig = graph.branch_by_id(tree.twig_ids[i]);
    // Removing twig i splits the tree; collect the component holding
    // twig.from. The cut is oriented from that side toward twig.to's side.
    std::set<int> side;
    side.insert(twig.from);
    std::queue<int> q;
    q.push(twig.from);
    while (!q.empty()) {
      int n = q.front();
      q.pop();
      for (int other_id : tree.twig_ids) {
        if (other_id == twig.id) continue;
        const Branch& t = graph.branch_by_id(other_id);
        int next = -1;
        if (t.from == n) next = t.to;
        else if (t.to == n) next = t.from;
        else continue;
        if (side.insert(next).second) q.push(next);
      }
    }
    for (int j = 0; j < n_b; ++j) {
      const Branch& b = graph.branch_by_id(order[j]);
      bool from_in = side.count(b.from) > 0;
      bool to_in = side.count(b.to) > 0;
      if (from_in == to_in) continue;   // not in the cutset
      fc(i, j) = from_in ? 1 : -1;
    }
  }
  return fc;
}

IntMatrix f_loop_matrix(const CircuitGraph& graph, const SpanningTree& tree) {
  const int n_links = static_cast<int>(tree.link_ids.size());
  const int n_b = graph.num_branches();
  IntMatrix fl = IntMatrix::Zero(n_links, n_b);
  std::vector<int> order = tree.branch_order();
  std::map<int, int> col;
  for (int j = 0; j < n_b; ++j) col[order[j]] = j;

  // Tree adjacency for path finding.
  std::map<int, std::vector<const Branch*>> adj;
  for (int id : tree.twig_ids) {
    const Branch& t = graph.branch_by_id(id);
    adj[t.from].push_back(&t);
    adj[t.to].push_back(&t);
  }

  for (int i = 0; i < n_links; ++i) {
    const Branch& link = graph.branch_by_id(tree.link_ids[i]);
    fl(i, col[link.id]) = 1;
    // BFS through the tree from link.to back to link.from; the walked path
    // completes the loop in the link's direction.
    std::map<int, std::pair<const Branch*, int>> prev;  // node -> (twig, from-node)
    std::queue<int> q;
    q.push(link.to);
    std::set<int> seen{link.to};
    while (!q.empty() && !seen.count(link.from)) {
      int n = q.front();
      q.pop();
      for (const Branch* t : adj[n]) {
        int next = t->from == n ? t->to : t->from;
        if (seen.insert(next).second) {
          prev[next] = {t, n};
          q.push(next);
        }
      }
    }
    for (int n = link.from; n != link.to;) {
      auto [t, from_node] = prev.at(n);
      // Walking from `from_node` to `n`; reversed here since we trace back.
      fl(i, col[t->id]) = (t->from == from_node && t->to == n) ? 1 : -1;
      n = from_node;
    }
  }
  return fl;
}

bool check_orthogonality(const IntMatrix& floop, const IntMatrix& fcut) {
  if (floop.cols() != fcut.cols())
    throw InputError("ShapeMismatch", "loop and cut matrices have different widths");
  Eigen::MatrixXi prod =
      floop.cast<int>() * fcut.cast<int>().transpose();
  return prod.isZero(0);
}

}  // namespace qcirc
