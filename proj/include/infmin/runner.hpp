#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "infmin/graph.hpp"
#include "infmin/ingest.hpp"
#include "infmin/minimize.hpp"

namespace infmin {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Algorithm { Exact, Rand, OutDeg, BG, AG, GR };
enum class EvalMode { Mcs, ExactOracle, Auto };

struct SeedSpec {
  bool random = false;
  std::uint32_t k = 0;
  std::string file;
};

struct RunConfig {
  DatasetSpec dataset;
  Model model = Model::IC;
  BlockKind strategy = BlockKind::Node;
  Algorithm algorithm = Algorithm::AG;
  std::vector<std::uint32_t> budgets{1};
  std::int64_t theta = 10'000;
  std::int64_t mcs_rounds = 10'000;
  std::int64_t eval_rounds = 100'000;
  EvalMode eval = EvalMode::Mcs;
  std::uint64_t master_seed = 0;
  std::uint32_t repeats = 5;
  double time_limit_s = 86'400.0; // a day; tighten for interactive runs
  McsMode bg_mode = McsMode::FreshWorlds;
  bool gr_top_up = false;
  std::uint32_t extract_nodes = 0; // 0 = no extraction
  std::uint32_t extract_edges = 0;
  bool include_timings = false; // timings in JSON break byte-reproducibility
  SeedSpec seeds;
};

struct RepeatOut {
  std::uint32_t repeat = 0;
  std::vector<std::int64_t> blocker_nodes;                      // original ids
  std::vector<std::pair<std::int64_t, std::int64_t>> blocker_edges;
  double algo_residual = 0.0; // algorithm's own estimate, offset applied
  double eval_residual = 0.0; // independent estimator, offset applied
  bool eval_exact = false;
  double wall_ms = 0.0;
  std::vector<std::string> warnings;
};

struct BudgetOut {
  std::uint32_t budget = 0;
  std::vector<RepeatOut> repeats;
  double mean_residual = 0.0;
  double mean_wall_ms = 0.0;
};

struct RunRecord {
  RunConfig config;
  std::uint32_t n = 0, m = 0;
  double base_spread = 0.0;
  bool base_exact = false;
  std::vector<BudgetOut> budgets;
  bool timed_out = false;
};

// Loads, assigns probabilities, picks seeds, unifies them, then runs the
// configured algorithm per (budget, repeat) with derived seed streams and
// evaluates every blocker set with an independent estimator. Throws
// ConfigError for invalid configurations; a hit time limit flags the record
// instead of throwing.
RunRecord run(const RunConfig& cfg);

// Deterministic JSON serialization: identical configs and master seeds give
// byte-identical output (timings only included when the config asks).
std::string run_record_json(const RunRecord& rec);

// Appends one CSV row per (budget, repeat):
// algorithm,dataset,model,strategy,b,repeat,residual,wall_ms,blockers
void append_run_csv(const RunRecord& rec, const std::string& path);

// One decrease table on the configured dataset, rendered as "candidate,delta"
// rows sorted by decreasing delta.
std::string inspect_delta(const RunConfig& cfg);

// Induced subgraph built by repeatedly picking a random node and pulling in
// its whole neighborhood until the node target (or, if by_edges, the induced
// edge target) is reached.
ProbGraph extract_subgraph(const ProbGraph& g, std::uint32_t target, bool by_edges,
                           std::uint64_t master_seed);

const char* algorithm_name(Algorithm a);

} // namespace infmin
