#include "infmin/dominator.hpp"

#include <stdexcept>

#include "detail.hpp"
#include "dom_core.hpp"

namespace infmin {

std::vector<std::vector<NodeId>> DomTree::children() const {
  std::vector<std::vector<NodeId>> ch(idom.size());
  for (NodeId u : order) {
    if (idom[u] >= 0) ch[static_cast<std::size_t>(idom[u])].push_back(u);
  }
  return ch;
}

std::string DomTree::parent_array_dump() const {
  std::string out;
  for (NodeId u : order) {
    if (idom[u] < 0) continue;
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(idom[u]);
    out += '\n';
  }
  return out;
}

namespace {

DomTree tree_from_scratch(const detail::DomScratch& ws, std::uint32_t count,
                          std::uint32_t n, NodeId root) {
  DomTree t;
  t.root = root;
  t.idom.assign(ws.idom.begin(), ws.idom.begin() + n);
  t.order.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i)
    t.order.push_back(static_cast<NodeId>(ws.vertex[i]));
  t.reachable = count;
  return t;
}

void check_source(const SampledWorld& w, NodeId s) {
  if (!w.parent) throw std::invalid_argument("world has no parent graph");
  if (s >= w.parent->node_count() || w.parent->is_removed(s))
    throw std::invalid_argument("dominator tree: source not in world");
}

} // namespace

DomTree dominator_tree_lengauer_tarjan(const SampledWorld& w, NodeId s) {
  check_source(w, s);
  const ProbGraph& g = *w.parent;
  detail::DomScratch ws;
  detail::LiveWorldView view{g, w.live.data()};
  const std::uint32_t count =
      detail::lengauer_tarjan(view, static_cast<std::int32_t>(s), ws);
  return tree_from_scratch(ws, count, g.node_count(), s);
}

DomTree dominator_tree_unit_in(const SampledWorld& w, NodeId s) {
  check_source(w, s);
  const ProbGraph& g = *w.parent;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::uint32_t live_in = 0;
    for (EdgeId e : g.in_edges(v)) live_in += w.live[e];
    if (live_in > 1)
      throw std::invalid_argument("unit in-degree tree: node " + std::to_string(v) +
                                  " has live in-degree " + std::to_string(live_in));
  }
  detail::DomScratch ws;
  detail::LiveWorldView view{g, w.live.data()};
  const std::uint32_t count =
      detail::unit_in_degree_tree(view, static_cast<std::int32_t>(s), ws);
  return tree_from_scratch(ws, count, g.node_count(), s);
}

std::vector<std::uint32_t> subtree_sizes(const DomTree& t) {
  std::vector<std::uint32_t> sz(t.idom.size(), 0);
  for (NodeId u : t.order) sz[u] = 1;
  for (std::size_t i = t.order.size(); i-- > 0;) {
    const NodeId u = t.order[i];
    if (t.idom[u] >= 0) sz[static_cast<std::size_t>(t.idom[u])] += sz[u];
  }
  return sz;
}

std::vector<std::int64_t> brute_force_idoms(const SampledWorld& w, NodeId s) {
  check_source(w, s);
  const ProbGraph& g = *w.parent;
  const std::uint32_t n = g.node_count();

  detail::Scratch sc;
  sc.ensure(n, g.edge_count());

  // Reachability with nothing removed.
  detail::bfs_live(g, w.live.data(), s, sc);
  std::vector<std::uint8_t> base_reach(n, 0);
  std::vector<NodeId> reached;
  for (NodeId v = 0; v < n; ++v) {
    if (sc.mark[v] == sc.epoch) {
      base_reach[v] = 1;
      reached.push_back(v);
    }
  }

  // dom_count[v] = number of dominators of v (v and s included).
  std::vector<std::uint32_t> dom_count(n, 0);
  std::vector<std::vector<NodeId>> dominators(n);
  for (NodeId v : reached) {
    dominators[v].push_back(v);
    if (v != s) dominators[v].push_back(s);
  }
  for (NodeId u : reached) {
    if (u == s) continue;
    detail::bfs_live(g, w.live.data(), s, sc, /*skip_node=*/u);
    for (NodeId v : reached) {
      if (v == u || v == s) continue;
      if (sc.mark[v] != sc.epoch) dominators[v].push_back(u); // lost without u
    }
  }
  for (NodeId v : reached) dom_count[v] = static_cast<std::uint32_t>(dominators[v].size());

  // idom = the dominator (other than v) with the largest dominator set of its
  // own; dominators of a node form a chain, so this is the nearest one.
  std::vector<std::int64_t> idom(n, -1);
  for (NodeId v : reached) {
    if (v == s) continue;
    NodeId best = s;
    std::uint32_t best_count = dom_count[s];
    for (NodeId u : dominators[v]) {
      if (u == v) continue;
      if (dom_count[u] > best_count) {
        best = u;
        best_count = dom_count[u];
      }
    }
    idom[v] = best;
  }
  return idom;
}

} // namespace infmin
