#pragma once

// Shared fixtures and independent oracles for the test suites. Everything in
// here must stay independent of the implementation paths it is used to check:
// oracles work from definitions (full enumeration, reachability differencing).

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "infmin/graph.hpp"
#include "infmin/rng.hpp"

namespace testsupport {

using namespace infmin;

// Nine-node fixture used throughout: v1..v9 map to ids 0..8, seed v1, seven
// certain edges and three uncertain ones (v5->v8 0.5, v9->v8 0.2, v8->v7 0.1).
// Its exact expected spread is 7.66.
inline ProbGraph toy_graph(Model model = Model::IC) {
  std::vector<Edge> edges = {
      {0, 1, 1.0}, // v1 -> v2
      {0, 3, 1.0}, // v1 -> v4
      {1, 4, 1.0}, // v2 -> v5
      {3, 4, 1.0}, // v4 -> v5
      {4, 2, 1.0}, // v5 -> v3
      {4, 5, 1.0}, // v5 -> v6
      {4, 8, 1.0}, // v5 -> v9
      {4, 7, 0.5}, // v5 -> v8
      {8, 7, 0.2}, // v9 -> v8
      {7, 6, 0.1}, // v8 -> v7
  };
  std::vector<std::int64_t> orig = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  return ProbGraph(9, std::move(edges), {0}, model, std::move(orig));
}

constexpr NodeId V1 = 0, V2 = 1, V3 = 2, V4 = 3, V5 = 4, V6 = 5, V7 = 6, V8 = 7,
                 V9 = 8;

// Random digraph on n nodes where each ordered pair gets an edge with the
// given density; probabilities drawn from `levels`.
inline ProbGraph random_digraph(std::uint32_t n, double density,
                                const std::vector<double>& levels, std::uint64_t seed,
                                Model model = Model::IC) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      if (rng.next_double() < density) {
        const double p = levels[rng.next_below(static_cast<std::uint32_t>(levels.size()))];
        edges.push_back({u, v, p});
      }
    }
  }
  return ProbGraph(n, std::move(edges), {0}, model);
}

// Random LT-valid graph: in-edge probabilities of every node sum to <= 1.
inline ProbGraph random_lt_graph(std::uint32_t n, double density, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) {
    std::vector<NodeId> srcs;
    for (NodeId u = 0; u < n; ++u) {
      if (u != v && rng.next_double() < density) srcs.push_back(u);
    }
    if (srcs.empty()) continue;
    double budget = rng.next_double(); // total in-probability mass
    for (std::size_t i = 0; i < srcs.size(); ++i) {
      const double share = budget / static_cast<double>(srcs.size() - i) *
                           (0.5 + rng.next_double());
      const double p = std::min(budget, share);
      if (p > 1e-9) edges.push_back({srcs[i], v, p});
      budget -= p;
      if (budget <= 0) break;
    }
  }
  return ProbGraph(n, std::move(edges), {0}, Model::LT);
}

// Definitional expected spread for IC graphs: enumerate every subset of ALL
// edges (not just uncertain ones), weight by its probability, count
// reachability. Exponential in the edge count; a deliberately naive second
// route used to validate the production oracle.
inline double enumerate_all_edges_spread(const ProbGraph& g, NodeId s) {
  const std::uint32_t m = g.edge_count();
  const std::uint64_t configs = 1ULL << m;
  double total = 0.0;
  for (std::uint64_t cfg = 0; cfg < configs; ++cfg) {
    double pr = 1.0;
    for (EdgeId e = 0; e < m; ++e)
      pr *= (cfg >> e & 1) ? g.edge(e).p : 1.0 - g.edge(e).p;
    if (pr == 0.0) continue;
    // BFS on the selected edges
    std::vector<std::uint8_t> seen(g.node_count(), 0);
    std::vector<NodeId> queue{s};
    seen[s] = 1;
    std::uint32_t reached = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (EdgeId e : g.out_edges(queue[i])) {
        if (!(cfg >> e & 1)) continue;
        const NodeId v = g.edge(e).dst;
        if (!seen[v]) {
          seen[v] = 1;
          queue.push_back(v);
          ++reached;
        }
      }
    }
    total += pr * static_cast<double>(reached);
  }
  return total;
}

// Reachability in a live-edge world with optional skips, straight from the
// definition; independent of detail::bfs_live.
inline std::uint32_t naive_reachable(const ProbGraph& g,
                                     const std::vector<std::uint8_t>& live, NodeId s,
                                     NodeId skip_node = static_cast<NodeId>(-1),
                                     std::int64_t skip_edge = -1) {
  std::set<NodeId> seen{s};
  std::vector<NodeId> queue{s};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (EdgeId e : g.out_edges(queue[i])) {
      if (!live[e] || static_cast<std::int64_t>(e) == skip_edge) continue;
      const NodeId v = g.edge(e).dst;
      if (v == skip_node || seen.count(v)) continue;
      seen.insert(v);
      queue.push_back(v);
    }
  }
  return static_cast<std::uint32_t>(seen.size());
}

} // namespace testsupport
