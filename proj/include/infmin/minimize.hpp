#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "infmin/decrease.hpp"
#include "infmin/graph.hpp"
#include "infmin/sampling.hpp"

namespace infmin {

// How the baseline greedy estimates per-candidate spread decreases:
// independent simulations per candidate, or reachability differences on one
// shared set of sampled worlds per round. The shared-world mode reproduces
// the dominator-subtree tables integer-for-integer.
enum class McsMode { FreshWorlds, CommonRandomNumbers };

struct TraceEntry {
  std::int32_t round = 0;
  bool replacement = false; // greedy_replace second phase
  NodeId node = 0;
  EdgePair edge{0, 0};
  double delta = 0.0;
};

struct BlockResult {
  std::string algorithm;
  BlockSet blockers;
  SpreadEstimate residual; // algorithm-side estimate; exact when residual_exact
  bool residual_exact = false;
  std::int64_t rounds_used = 0;
  double wall_ms = 0.0;
  std::vector<TraceEntry> trace;
  std::vector<std::string> warnings;
};

struct TimeoutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlgoOptions {
  std::int64_t theta = 10'000;      // sampled worlds per decrease table
  std::int64_t mcs_rounds = 10'000; // baseline simulation rounds
  McsMode mcs_mode = McsMode::FreshWorlds;
  bool top_up_budget = false; // greedy_replace: fill past the seed's out-degree
  std::int64_t exact_subset_cap = 1'000'000;
  int exact_uncertain_cap = 25;
  bool has_deadline = false;
  std::chrono::steady_clock::time_point deadline{};
  // Observer for each round's decrease table (tests, debugging).
  std::function<void(int round, const DecreaseTable&)> round_hook;
};

// Greedy with per-candidate Monte-Carlo estimation: b rounds, each committing
// the candidate whose blocking drops the estimated spread the most (ties to
// the lowest id). The cost of enumerating every candidate each round is the
// point of this baseline.
BlockResult baseline_greedy(const ProbGraph& g, NodeId s, std::uint32_t b,
                            std::uint64_t master_seed, BlockKind kind,
                            const AlgoOptions& opt = {});

// Greedy driven by decrease tables: one table per round over all remaining
// candidates, commit the argmax, recompute on the blocked graph.
BlockResult advanced_greedy(const ProbGraph& g, NodeId s, std::uint32_t b,
                            std::uint64_t master_seed, BlockKind kind,
                            const AlgoOptions& opt = {});

// Node blocking in two phases: greedily block out-neighbors of the seed, then
// walk the picks in reverse and let each defend its slot against every other
// node, stopping early once a pick survives.
BlockResult greedy_replace(const ProbGraph& g, NodeId s, std::uint32_t b,
                           std::uint64_t master_seed, const AlgoOptions& opt = {});

// Uniform sample of b candidates, seeds excluded.
BlockResult random_blockers(const ProbGraph& g, std::uint32_t b,
                            std::uint64_t master_seed, BlockKind kind);

// Top-b candidates by out-degree (edge kind: by out-degree of the edge's end
// node); ties to the lowest id.
BlockResult out_degree_blockers(const ProbGraph& g, std::uint32_t b, BlockKind kind);

// Exhaustive optimum over all candidate subsets of size at most b, evaluated
// with the exact oracle; first minimum in enumeration order wins ties.
BlockResult exact_search(const ProbGraph& g, NodeId s, std::uint32_t b,
                         BlockKind kind, const AlgoOptions& opt = {});

// Decrease table from reachability differences on theta shared worlds; on the
// same master seed this equals the dominator-subtree tables exactly, raw
// integer by raw integer.
DecreaseTable crn_decrease_table(const ProbGraph& g, NodeId s, std::int64_t theta,
                                 std::uint64_t master_seed, BlockKind kind);

} // namespace infmin
