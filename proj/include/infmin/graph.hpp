#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace infmin {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using EdgePair = std::pair<NodeId, NodeId>;

enum class Model { IC, LT };

struct Edge {
  NodeId src;
  NodeId dst;
  double p; // propagation probability in [0, 1]
};

struct Violation {
  std::string code; // "prob_out_of_range", "self_loop", "duplicate_edge", ...
  std::string message;
};

// Directed graph with per-edge propagation probabilities and a seed set.
//
// Immutable after construction; blocking transformations return new graphs.
// Node removal keeps the id space intact: removed nodes stay in [0, n) with a
// flag set and all incident edges dropped, so per-node tables remain aligned
// across successive removals.
class ProbGraph {
public:
  ProbGraph() = default;
  ProbGraph(std::uint32_t n, std::vector<Edge> edges, std::vector<NodeId> seeds,
            Model model, std::vector<std::int64_t> original_ids = {});

  std::uint32_t node_count() const { return n_; }
  std::uint32_t active_node_count() const { return n_ - removed_count_; }
  std::uint32_t edge_count() const { return static_cast<std::uint32_t>(edges_.size()); }
  Model model() const { return model_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  // Edge ids incident to a node, in ingestion order.
  std::span<const EdgeId> out_edges(NodeId u) const {
    return {out_edge_.data() + out_begin_[u], out_begin_[u + 1] - out_begin_[u]};
  }
  std::span<const EdgeId> in_edges(NodeId v) const {
    return {in_edge_.data() + in_begin_[v], in_begin_[v + 1] - in_begin_[v]};
  }
  std::uint32_t out_degree(NodeId u) const { return out_begin_[u + 1] - out_begin_[u]; }
  std::uint32_t in_degree(NodeId v) const { return in_begin_[v + 1] - in_begin_[v]; }

  const std::vector<NodeId>& seeds() const { return seeds_; }
  bool is_seed(NodeId u) const;
  bool is_removed(NodeId u) const { return removed_[u] != 0; }
  std::uint32_t removed_count() const { return removed_count_; }

  // Mapping back to the ids of the ingested dataset. The unified seed, which
  // does not exist in the dataset, maps to -1.
  std::int64_t original_id(NodeId u) const { return original_ids_[u]; }
  const std::vector<std::int64_t>& original_ids() const { return original_ids_; }
  NodeId node_of_original(std::int64_t orig) const; // throws if unknown

  // Seed nodes folded away by unify_seeds each still count 1 toward the
  // expected spread of the original problem; this offset records that.
  std::int64_t spread_offset() const { return spread_offset_; }

  // Structured invariant check; an empty report means the graph is valid.
  std::vector<Violation> validate() const;

  // Replaces all seeds by a single new seed node wired to their merged
  // out-neighborhoods: probability 1 - prod(1 - p_i) under IC, sum p_i under
  // LT. Throws if an LT merge overflows probability 1. Single-seed graphs are
  // returned unchanged.
  ProbGraph unify_seeds() const;

  // Blocking transformations. Node removal errors if a seed is in the set;
  // edge removal errors on edges not present in the graph.
  ProbGraph remove_nodes(std::span<const NodeId> blocked) const;
  ProbGraph remove_edges(std::span<const EdgePair> blocked) const;

  // Locates the edge id of (src, dst), or -1 if absent.
  std::int64_t find_edge(NodeId src, NodeId dst) const;

  ProbGraph with_probabilities(std::vector<double> p) const;

private:
  void build_adjacency();

  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> out_begin_, in_begin_;
  std::vector<EdgeId> out_edge_, in_edge_;
  std::vector<NodeId> seeds_;
  Model model_ = Model::IC;
  std::vector<std::uint8_t> removed_;
  std::uint32_t removed_count_ = 0;
  std::vector<std::int64_t> original_ids_;
  std::int64_t spread_offset_ = 0;
};

enum class BlockKind { Node, Edge };

// A chosen blocker set plus the budget it was chosen under.
struct BlockSet {
  BlockKind kind = BlockKind::Node;
  std::vector<NodeId> nodes;     // sorted, disjoint from seeds
  std::vector<EdgePair> edges;   // sorted
  std::uint32_t budget = 0;

  std::size_t size() const {
    return kind == BlockKind::Node ? nodes.size() : edges.size();
  }
};

} // namespace infmin
