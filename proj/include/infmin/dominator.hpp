#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infmin/graph.hpp"
#include "infmin/sampling.hpp"

namespace infmin {

// Dominator tree of a sampled world rooted at the seed. Spans exactly the
// nodes reachable from the root; unreachable nodes have idom -1 and are not
// in `order`.
struct DomTree {
  NodeId root = 0;
  std::vector<std::int32_t> idom; // per node; -1 for root and unreachable
  std::vector<NodeId> order;      // reachable nodes, every dominator before its subtree
  std::uint32_t reachable = 0;

  bool reached(NodeId u) const { return u == root || idom[u] >= 0; }
  std::vector<std::vector<NodeId>> children() const;

  // "child parent" text lines for diffing against oracle output.
  std::string parent_array_dump() const;
};

// Dominator tree via Lengauer-Tarjan (simple O(m log n) link-eval variant):
// DFS numbering, semidominators by path minima, then idom resolution.
DomTree dominator_tree_lengauer_tarjan(const SampledWorld& w, NodeId s);

// Dominator tree of a world where every node has at most one live incoming
// edge (any LT world): the BFS tree, since the unique in-neighbor is the
// immediate dominator. O(m). Throws if the world has a live in-degree >= 2.
DomTree dominator_tree_unit_in(const SampledWorld& w, NodeId s);

// Size of every rooted subtree, one bottom-up pass. Zero for unreachable
// nodes; subtree_sizes(t)[t.root] equals t.reachable.
std::vector<std::uint32_t> subtree_sizes(const DomTree& t);

// Definitional oracle: u dominates v iff v is unreachable once u is removed;
// idom(v) is the dominator that every other dominator dominates. O(n * m),
// test-scale only.
std::vector<std::int64_t> brute_force_idoms(const SampledWorld& w, NodeId s);

} // namespace infmin
