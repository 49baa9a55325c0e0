#pragma once

// Internal scratch buffers shared by the sampling, decrease-table and greedy
// kernels. One Scratch per thread; all state is reset per world through epoch
// counters so the hot loops never reallocate.

#include <cstdint>
#include <vector>

#include "infmin/graph.hpp"
#include "infmin/rng.hpp"

namespace infmin::detail {

struct Scratch {
  std::vector<std::uint8_t> live;  // per edge
  std::vector<std::uint32_t> mark; // per node, epoch-stamped visited flag
  std::vector<NodeId> queue;
  std::uint32_t epoch = 0;

  void ensure(std::uint32_t n, std::uint32_t m) {
    if (live.size() < m) live.resize(m);
    if (mark.size() < n) {
      mark.assign(n, 0); // grown buffers restart the epoch; stale marks must go
      epoch = 0;
    }
    if (queue.capacity() < n) queue.reserve(n);
  }

  std::uint32_t next_epoch() {
    if (++epoch == 0) {
      std::fill(mark.begin(), mark.end(), 0);
      epoch = 1;
    }
    return epoch;
  }
};

// Draws a live-edge world into scratch.live. IC: one uniform per edge. LT: one
// uniform per node with incoming edges, resolved against the prefix sums of
// its in-edge probabilities.
inline std::uint32_t sample_into(const ProbGraph& g, std::uint64_t round_seed,
                                 Scratch& s) {
  s.ensure(g.node_count(), g.edge_count());
  Rng rng(round_seed);
  std::uint32_t live_count = 0;
  if (g.model() == Model::IC) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const bool keep = rng.next_double() < g.edge(e).p;
      s.live[e] = keep;
      live_count += keep;
    }
  } else {
    std::fill(s.live.begin(), s.live.begin() + g.edge_count(), 0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      auto in = g.in_edges(v);
      if (in.empty()) continue;
      const double x = rng.next_double();
      double cum = 0.0;
      for (EdgeId e : in) {
        cum += g.edge(e).p;
        if (x < cum) {
          s.live[e] = 1;
          ++live_count;
          break;
        }
      }
    }
  }
  return live_count;
}

// BFS over live edges from s; returns the reached count (s included) and
// leaves the reached nodes marked with the current epoch in s.mark.
inline std::uint32_t bfs_live(const ProbGraph& g, const std::uint8_t* live,
                              NodeId src, Scratch& s, NodeId skip_node = static_cast<NodeId>(-1),
                              std::int64_t skip_edge = -1) {
  const std::uint32_t ep = s.next_epoch();
  s.queue.clear();
  s.queue.push_back(src);
  s.mark[src] = ep;
  std::uint32_t reached = 1;
  for (std::size_t i = 0; i < s.queue.size(); ++i) {
    const NodeId u = s.queue[i];
    for (EdgeId e : g.out_edges(u)) {
      if (!live[e] || static_cast<std::int64_t>(e) == skip_edge) continue;
      const NodeId v = g.edge(e).dst;
      if (v == skip_node || s.mark[v] == ep) continue;
      s.mark[v] = ep;
      s.queue.push_back(v);
      ++reached;
    }
  }
  return reached;
}

} // namespace infmin::detail
