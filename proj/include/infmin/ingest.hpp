#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infmin/graph.hpp"

namespace infmin {

enum class ProbModel { TR, WC, Explicit };

struct DatasetSpec {
  std::string path;
  bool directed = true;
  ProbModel prob_model = ProbModel::Explicit;
};

struct DatasetStats {
  std::uint32_t n = 0;
  std::uint32_t m = 0;    // directed edge count (after bidirectional expansion)
  double d_avg = 0.0;     // 2m / n
  std::uint32_t d_max = 0; // max of in-degree + out-degree
};

struct LoadResult {
  ProbGraph graph; // probabilities are 0 unless the file carried them
  bool has_probabilities = false;
  std::uint32_t self_loops_dropped = 0;
};

// Whitespace edge lists: "u v" or "u v p" lines, '#' comments. Node ids are
// remapped to contiguous 0-based ids in first-appearance order; the table
// back to the original ids lives in the graph. Undirected inputs expand each
// line to both directions. Self-loops are dropped and counted; duplicate
// directed edges are an error.
LoadResult load_edge_list(const std::string& path, bool directed, Model model = Model::IC);

// Trivalency assignment: each edge gets a probability drawn uniformly from
// {0.1, 0.01, 0.001}.
ProbGraph assign_tr(const ProbGraph& g, std::uint64_t master_seed);

// Weighted-cascade assignment: p(u,v) = 1 / in-degree(v). In-probability sums
// come out exactly 1, so the result always passes LT validation.
ProbGraph assign_wc(const ProbGraph& g);

DatasetStats stats(const ProbGraph& g);

// Seed files carry one original node id per line ('#' comments allowed).
std::vector<NodeId> read_seed_file(const ProbGraph& g, const std::string& path);

// k distinct random seeds; nodes without any incident edge are excluded.
std::vector<NodeId> random_seed_set(const ProbGraph& g, std::uint32_t k,
                                    std::uint64_t master_seed);

// Synthetic benchmark graph: a dense core of `core` nodes with `core_out`
// random out-edges each (so cascades have somewhere to go even under low
// probabilities) plus uniform random edges up to m_target. Probabilities are
// left unset.
ProbGraph synthetic_graph(std::uint32_t n, std::uint32_t m_target, std::uint32_t core,
                          std::uint32_t core_out, std::uint64_t master_seed);

void write_edge_list(const ProbGraph& g, const std::string& path,
                     bool with_probabilities);

} // namespace infmin
