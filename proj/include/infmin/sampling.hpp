#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "infmin/graph.hpp"
#include "infmin/rng.hpp"

namespace infmin {

// One live-edge instantiation of a ProbGraph.
//
// IC worlds keep each edge independently with its probability; LT worlds give
// every node at most one live incoming edge, chosen with the in-edge
// probabilities (or none with the leftover mass). Worlds are value objects:
// deterministic given (master seed, round index) and safe to move between
// threads.
struct SampledWorld {
  const ProbGraph* parent = nullptr;
  std::uint64_t round_seed = 0;
  std::vector<std::uint8_t> live; // indexed by edge id
  std::uint32_t live_count = 0;
};

SampledWorld sample_world(const ProbGraph& g, std::uint64_t round_seed);

// Number of nodes reachable from s over live edges, s included.
std::uint32_t reachable_count(const SampledWorld& w, NodeId s);

struct SpreadEstimate {
  double mean = 0.0;
  std::int64_t rounds = 0;
  std::vector<std::uint32_t> per_round_counts; // retained only on request
};

// Monte-Carlo estimate of the expected spread from s: the mean reachable
// count over `rounds` independent worlds. Round i always uses the world
// derived from (master_seed, i), and the per-round counts are integers, so
// the result is bit-identical under any number of threads.
SpreadEstimate mcs_spread(const ProbGraph& g, NodeId s, std::int64_t rounds,
                          std::uint64_t master_seed, bool keep_counts = false);

// Serial reference implementation, kept for testing the parallel kernel.
SpreadEstimate mcs_spread_serial(const ProbGraph& g, NodeId s, std::int64_t rounds,
                                 std::uint64_t master_seed, bool keep_counts = false);

// Exact expected spread by enumerating live-edge configurations: subsets of
// the uncertain edges under IC, per-node in-edge choices under LT. Feasible
// only at desk scale; throws "exact enumeration infeasible" past the cap
// (2^max_uncertain configurations).
double exact_spread(const ProbGraph& g, NodeId s, int max_uncertain = 25);

// Same with blockers applied on the fly, so exhaustive search does not have
// to materialize a graph per candidate set.
double exact_spread_blocked(const ProbGraph& g, NodeId s,
                            std::span<const NodeId> blocked_nodes,
                            std::span<const EdgeId> blocked_edges,
                            int max_uncertain = 25);

// Single lazy Monte-Carlo cascade from s: edges are drawn only as the
// frontier reaches them, which matches the sampled-world distribution while
// touching O(activated) edges per run. Used by the baseline greedy, whose
// per-candidate estimates need millions of independent runs.
class CascadeSimulator {
public:
  static constexpr NodeId kNoNode = static_cast<NodeId>(-1);

  explicit CascadeSimulator(const ProbGraph& g);

  // Activated-node count with an optional node or edge treated as blocked.
  std::uint32_t run(NodeId s, Rng& rng, NodeId skip_node = kNoNode,
                    std::int64_t skip_edge = -1);

private:
  const ProbGraph& g_;
  std::vector<std::uint32_t> visited_;
  std::vector<std::uint32_t> choice_epoch_; // LT: when the node chose
  std::vector<std::int64_t> choice_;        // LT: chosen in-edge (-1 = none)
  std::vector<NodeId> queue_;
  std::uint32_t epoch_ = 0;

  std::int64_t lt_choice(NodeId v, Rng& rng, NodeId skip_node, std::int64_t skip_edge);
};

} // namespace infmin
