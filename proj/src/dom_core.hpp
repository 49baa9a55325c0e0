#pragma once

// Dominator-tree kernels shared by the public dominator API and the
// decrease-table loops. Templated over a world view so the same code runs on
// live-edge-filtered parent adjacency and on materialized edge-expanded
// graphs.
//
// View concept:
//   uint32_t node_count() const
//   uint32_t out_size(u) const;  int32_t out_target(u, k) const  // -1 = dead slot
//   uint32_t in_size(v)  const;  int32_t in_source(v, k)  const  // -1 = dead slot

#include <cstdint>
#include <vector>

#include "infmin/graph.hpp"
#include "infmin/sampling.hpp"

namespace infmin::detail {

struct DomScratch {
  std::vector<std::int32_t> dfnum, parent, semi, idom, ancestor, label;
  std::vector<std::int32_t> bucket_head, bucket_next;
  std::vector<std::int32_t> vertex;     // dfs index -> node
  std::vector<std::int32_t> comp_stack; // eval path compression
  std::vector<std::uint32_t> sizes;     // subtree accumulation
  std::vector<std::pair<std::int32_t, std::uint32_t>> dfs_stack;

  void ensure(std::uint32_t n) {
    if (dfnum.size() < n) {
      dfnum.resize(n);
      parent.resize(n);
      semi.resize(n);
      idom.resize(n);
      ancestor.resize(n);
      label.resize(n);
      bucket_head.resize(n);
      bucket_next.resize(n);
      vertex.resize(n);
      sizes.resize(n);
    }
    if (dfs_stack.capacity() < n) dfs_stack.reserve(n);
  }
};

// Simple Lengauer-Tarjan (path compression link-eval, O(m log n)). Fills
// ws.idom with node-indexed immediate dominators (-1 for the root and for
// unreachable nodes) and ws.vertex[0..count) with the DFS order, in which
// every dominator precedes its subtree. Returns the reachable count.
template <class View>
std::uint32_t lengauer_tarjan(const View& view, std::int32_t root, DomScratch& ws) {
  const std::uint32_t n = view.node_count();
  ws.ensure(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    ws.dfnum[i] = -1;
    ws.idom[i] = -1;
    ws.ancestor[i] = -1;
    ws.bucket_head[i] = -1;
  }

  // Iterative DFS from the root; slot order fixes numbering ties.
  std::int32_t count = 0;
  ws.dfs_stack.clear();
  ws.dfs_stack.emplace_back(root, 0);
  ws.dfnum[root] = count;
  ws.vertex[count++] = root;
  ws.parent[root] = -1;
  while (!ws.dfs_stack.empty()) {
    auto& [u, k] = ws.dfs_stack.back();
    bool descended = false;
    const std::uint32_t deg = view.out_size(u);
    while (k < deg) {
      const std::int32_t v = view.out_target(u, k++);
      if (v < 0 || ws.dfnum[v] >= 0) continue;
      ws.dfnum[v] = count;
      ws.vertex[count++] = v;
      ws.parent[v] = u;
      ws.dfs_stack.emplace_back(v, 0);
      descended = true;
      break;
    }
    if (!descended) ws.dfs_stack.pop_back();
  }

  for (std::int32_t i = 0; i < count; ++i) {
    const std::int32_t v = ws.vertex[i];
    ws.semi[v] = i;
    ws.label[v] = v;
  }

  auto eval = [&](std::int32_t v) -> std::int32_t {
    if (ws.ancestor[v] < 0) return v;
    // compress the ancestor path, updating labels top-down
    ws.comp_stack.clear();
    std::int32_t x = v;
    while (ws.ancestor[ws.ancestor[x]] >= 0) {
      ws.comp_stack.push_back(x);
      x = ws.ancestor[x];
    }
    while (!ws.comp_stack.empty()) {
      const std::int32_t u = ws.comp_stack.back();
      ws.comp_stack.pop_back();
      if (ws.semi[ws.label[ws.ancestor[u]]] < ws.semi[ws.label[u]])
        ws.label[u] = ws.label[ws.ancestor[u]];
      ws.ancestor[u] = ws.ancestor[ws.ancestor[u]];
    }
    return ws.label[v];
  };

  for (std::int32_t i = count - 1; i >= 1; --i) {
    const std::int32_t w = ws.vertex[i];
    const std::uint32_t deg = view.in_size(w);
    for (std::uint32_t k = 0; k < deg; ++k) {
      const std::int32_t u = view.in_source(w, k);
      if (u < 0 || ws.dfnum[u] < 0) continue; // dead slot or unreachable pred
      const std::int32_t x = eval(u);
      if (ws.semi[x] < ws.semi[w]) ws.semi[w] = ws.semi[x];
    }
    const std::int32_t sv = ws.vertex[ws.semi[w]];
    ws.bucket_next[w] = ws.bucket_head[sv];
    ws.bucket_head[sv] = w;
    ws.ancestor[w] = ws.parent[w]; // link

    const std::int32_t p = ws.parent[w];
    for (std::int32_t v = ws.bucket_head[p]; v >= 0;) {
      const std::int32_t next = ws.bucket_next[v];
      const std::int32_t x = eval(v);
      ws.idom[v] = ws.semi[x] < ws.semi[v] ? x : p;
      v = next;
    }
    ws.bucket_head[p] = -1;
  }
  for (std::int32_t i = 1; i < count; ++i) {
    const std::int32_t w = ws.vertex[i];
    if (ws.idom[w] != ws.vertex[ws.semi[w]]) ws.idom[w] = ws.idom[ws.idom[w]];
  }
  ws.idom[root] = -1;
  return static_cast<std::uint32_t>(count);
}

// BFS tree of a world with unit in-degrees: the unique live in-neighbor is
// the immediate dominator. Fills ws.idom / ws.vertex like lengauer_tarjan.
template <class View>
std::uint32_t unit_in_degree_tree(const View& view, std::int32_t root, DomScratch& ws) {
  const std::uint32_t n = view.node_count();
  ws.ensure(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    ws.idom[i] = -1;
    ws.dfnum[i] = -1; // reused as visited flags
  }

  std::int32_t count = 0;
  ws.vertex[count++] = root;
  ws.dfnum[root] = 0;
  for (std::int32_t i = 0; i < count; ++i) {
    const std::int32_t u = ws.vertex[i];
    const std::uint32_t deg = view.out_size(u);
    for (std::uint32_t k = 0; k < deg; ++k) {
      const std::int32_t v = view.out_target(u, k);
      if (v < 0 || ws.dfnum[v] >= 0) continue;
      ws.dfnum[v] = count;
      ws.idom[v] = u;
      ws.vertex[count++] = v;
    }
  }
  ws.idom[root] = -1;
  return static_cast<std::uint32_t>(count);
}

// Subtree sizes over ws.vertex order (parents precede children); counts only
// nodes accepted by `counts_as_member`.
template <class Member>
void accumulate_subtree_sizes(DomScratch& ws, std::uint32_t count, Member counts_as_member) {
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::int32_t v = ws.vertex[i];
    ws.sizes[v] = counts_as_member(v) ? 1u : 0u;
  }
  for (std::uint32_t i = count; i-- > 1;) {
    const std::int32_t v = ws.vertex[i];
    ws.sizes[ws.idom[v]] += ws.sizes[v];
  }
}

// View over a sampled world: the parent graph's adjacency filtered by the
// live-edge flags.
struct LiveWorldView {
  const ProbGraph& g;
  const std::uint8_t* live;

  std::uint32_t node_count() const { return g.node_count(); }
  std::uint32_t out_size(std::int32_t u) const {
    return g.out_degree(static_cast<NodeId>(u));
  }
  std::int32_t out_target(std::int32_t u, std::uint32_t k) const {
    const EdgeId e = g.out_edges(static_cast<NodeId>(u))[k];
    return live[e] ? static_cast<std::int32_t>(g.edge(e).dst) : -1;
  }
  std::uint32_t in_size(std::int32_t v) const {
    return g.in_degree(static_cast<NodeId>(v));
  }
  std::int32_t in_source(std::int32_t v, std::uint32_t k) const {
    const EdgeId e = g.in_edges(static_cast<NodeId>(v))[k];
    return live[e] ? static_cast<std::int32_t>(g.edge(e).src) : -1;
  }
};

} // namespace infmin::detail
