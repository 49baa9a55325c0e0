#pragma once

#include <cstdint>
#include <vector>

#include "infmin/dominator.hpp"
#include "infmin/graph.hpp"
#include "infmin/sampling.hpp"

namespace infmin {

// Estimated decrease of the expected spread per candidate node or edge,
// accumulated over theta sampled worlds.
//
// Counts are kept as exact integer sums of dominator-subtree sizes and
// divided by theta only on read, so results do not depend on accumulation
// order and a run with theta = a is the exact prefix of a run with theta = b
// under the same master seed.
struct DecreaseTable {
  BlockKind kind = BlockKind::Node;
  std::int64_t theta = 0;
  std::vector<std::int64_t> raw_counts;  // per node id / per edge id
  std::vector<std::uint8_t> excluded;    // node kind: seeds and removed nodes

  double delta(std::size_t candidate) const {
    return static_cast<double>(raw_counts[candidate]) / static_cast<double>(theta);
  }
  std::vector<double> deltas() const;

  // Row-per-candidate "candidate,delta" export, sorted by decreasing delta
  // (ties by candidate id); candidates print as original dataset ids.
  std::string to_csv(const ProbGraph& g) const;
};

// Per-candidate-node spread decrease: for each sampled world, build the
// dominator tree from s and add every node's subtree size to its counter.
// Nodes unreachable in a world contribute 0 for that round. LT worlds use the
// linear unit-in-degree construction, IC worlds Lengauer-Tarjan.
DecreaseTable node_decrease_table(const ProbGraph& g, NodeId s, std::int64_t theta,
                                  std::uint64_t master_seed);
DecreaseTable node_decrease_table_serial(const ProbGraph& g, NodeId s,
                                         std::int64_t theta, std::uint64_t master_seed);

// Rounds [begin, end) of the same stream; node_decrease_table(g, s, t, m)
// equals node_decrease_rounds(g, s, 0, t, m).
DecreaseTable node_decrease_rounds(const ProbGraph& g, NodeId s, std::int64_t begin,
                                   std::int64_t end, std::uint64_t master_seed);

// A sampled world with every live edge (u,v) split through a virtual node:
// u -> w_uv -> v. Blocking the edge is then blocking w_uv, so the node
// machinery answers edge queries. Virtual ids follow n by live-edge index.
struct EdgeSampledWorld {
  const ProbGraph* parent = nullptr;
  std::uint32_t original_nodes = 0;      // ids [0, original_nodes) are real
  std::vector<EdgeId> virtual_edges;     // virtual rank -> parent edge id
  std::vector<std::uint32_t> out_begin, in_begin;
  std::vector<std::int32_t> out_to, in_to;

  std::uint32_t node_count() const {
    return original_nodes + static_cast<std::uint32_t>(virtual_edges.size());
  }
};

EdgeSampledWorld build_edge_world(const SampledWorld& w);

// Per-candidate-edge spread decrease: sample a world, split its live edges,
// build the dominator tree of the split graph and count the original nodes in
// each virtual node's subtree. Dead edges contribute 0 for that round.
DecreaseTable edge_decrease_table(const ProbGraph& g, NodeId s, std::int64_t theta,
                                  std::uint64_t master_seed);
DecreaseTable edge_decrease_table_serial(const ProbGraph& g, NodeId s,
                                         std::int64_t theta, std::uint64_t master_seed);
DecreaseTable edge_decrease_rounds(const ProbGraph& g, NodeId s, std::int64_t begin,
                                   std::int64_t end, std::uint64_t master_seed);

// Sample count sufficient for a relative error below eps with probability at
// least 1 - n^-l, given a lower bound on the true decrease:
// ceil(l * (2 + eps) * n * ln(n) / (eps^2 * opt_lower_bound)).
std::int64_t chernoff_theta(double l, double eps, std::uint64_t n,
                            double opt_lower_bound);

} // namespace infmin
