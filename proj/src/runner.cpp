#include "infmin/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "infmin/decrease.hpp"
#include "infmin/sampling.hpp"

namespace infmin {

using Clock = std::chrono::steady_clock;
using ordered_json = nlohmann::ordered_json;

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Exact: return "exact";
    case Algorithm::Rand: return "rand";
    case Algorithm::OutDeg: return "outdeg";
    case Algorithm::BG: return "bg";
    case Algorithm::AG: return "ag";
    case Algorithm::GR: return "gr";
  }
  return "?";
}

namespace {

const char* model_name(Model m) { return m == Model::IC ? "ic" : "lt"; }
const char* strategy_name(BlockKind k) { return k == BlockKind::Node ? "node" : "edge"; }
const char* prob_model_name(ProbModel p) {
  switch (p) {
    case ProbModel::TR: return "tr";
    case ProbModel::WC: return "wc";
    case ProbModel::Explicit: return "file";
  }
  return "?";
}

struct Prepared {
  ProbGraph unified;
  NodeId source = 0;
};

Prepared prepare(const RunConfig& cfg) {
  if (cfg.dataset.path.empty()) throw ConfigError("no input dataset");
  LoadResult loaded = [&] {
    try {
      return load_edge_list(cfg.dataset.path, cfg.dataset.directed, cfg.model);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }();

  ProbGraph g = std::move(loaded.graph);
  switch (cfg.dataset.prob_model) {
    case ProbModel::TR:
      g = assign_tr(g, cfg.master_seed);
      break;
    case ProbModel::WC:
      g = assign_wc(g);
      break;
    case ProbModel::Explicit:
      if (!loaded.has_probabilities)
        throw ConfigError("prob model 'file' requires a probability column in " +
                          cfg.dataset.path);
      break;
  }

  if (cfg.extract_nodes > 0 || cfg.extract_edges > 0) {
    const bool by_edges = cfg.extract_edges > 0;
    g = extract_subgraph(g, by_edges ? cfg.extract_edges : cfg.extract_nodes, by_edges,
                         cfg.master_seed);
  }

  std::vector<NodeId> seeds;
  try {
    if (cfg.seeds.random) {
      seeds = random_seed_set(g, cfg.seeds.k, cfg.master_seed);
    } else if (!cfg.seeds.file.empty()) {
      seeds = read_seed_file(g, cfg.seeds.file);
    }
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (seeds.empty()) throw ConfigError("no seeds configured");

  ProbGraph seeded(g.node_count(), g.edges(), seeds, cfg.model, g.original_ids());
  const auto violations = seeded.validate();
  if (!violations.empty()) {
    std::string msg = "dataset fails validation:";
    for (const auto& v : violations) {
      msg += " [" + v.code + "] " + v.message + ";";
      if (msg.size() > 400) break;
    }
    throw ConfigError(msg);
  }

  Prepared p{seeded.unify_seeds(), 0};
  p.source = p.unified.seeds().at(0);
  return p;
}

BlockResult run_algorithm(const RunConfig& cfg, const ProbGraph& g, NodeId s,
                          std::uint32_t budget, std::uint64_t repeat_seed,
                          const AlgoOptions& opt) {
  switch (cfg.algorithm) {
    case Algorithm::Exact:
      return exact_search(g, s, budget, cfg.strategy, opt);
    case Algorithm::Rand:
      return random_blockers(g, budget, repeat_seed, cfg.strategy);
    case Algorithm::OutDeg:
      return out_degree_blockers(g, budget, cfg.strategy);
    case Algorithm::BG:
      return baseline_greedy(g, s, budget, repeat_seed, cfg.strategy, opt);
    case Algorithm::AG:
      return advanced_greedy(g, s, budget, repeat_seed, cfg.strategy, opt);
    case Algorithm::GR:
      if (cfg.strategy != BlockKind::Node)
        throw ConfigError("greedy replace supports the node strategy only");
      return greedy_replace(g, s, budget, repeat_seed, opt);
  }
  throw ConfigError("unknown algorithm");
}

// Residual spread of the blocked graph through an estimator independent of
// the algorithm's internal worlds.
std::pair<double, bool> evaluate_blockers(const RunConfig& cfg, const ProbGraph& unified,
                                          NodeId s, const BlockSet& blockers,
                                          std::uint64_t eval_stream) {
  ProbGraph blocked = blockers.kind == BlockKind::Node
                          ? unified.remove_nodes(blockers.nodes)
                          : unified.remove_edges(blockers.edges);
  const double offset = static_cast<double>(unified.spread_offset());
  if (cfg.eval == EvalMode::ExactOracle || cfg.eval == EvalMode::Auto) {
    try {
      return {exact_spread(blocked, s) + offset, true};
    } catch (const std::exception&) {
      if (cfg.eval == EvalMode::ExactOracle) throw;
    }
  }
  SpreadEstimate est = mcs_spread(blocked, s, cfg.eval_rounds, eval_stream);
  return {est.mean + offset, false};
}

} // namespace

ProbGraph extract_subgraph(const ProbGraph& g, std::uint32_t target, bool by_edges,
                           std::uint64_t master_seed) {
  Rng rng(derive_seed(master_seed, seed_salt::kExtract));
  std::vector<std::uint8_t> included(g.node_count(), 0);
  std::vector<NodeId> pool(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) pool[u] = u;
  std::uint32_t included_count = 0;
  std::uint32_t induced_edges = 0;

  auto include = [&](NodeId u) {
    if (included[u]) return;
    included[u] = 1;
    ++included_count;
  };
  auto count_induced = [&]() {
    std::uint32_t c = 0;
    for (const Edge& e : g.edges())
      if (included[e.src] && included[e.dst]) ++c;
    return c;
  };

  while (!pool.empty()) {
    if (by_edges ? induced_edges >= target : included_count >= target) break;
    const std::uint32_t i = rng.next_below(static_cast<std::uint32_t>(pool.size()));
    const NodeId u = pool[i];
    pool[i] = pool.back();
    pool.pop_back();
    if (included[u]) continue;
    include(u);
    for (EdgeId e : g.out_edges(u)) include(g.edge(e).dst);
    for (EdgeId e : g.in_edges(u)) include(g.edge(e).src);
    if (by_edges) induced_edges = count_induced();
  }

  std::vector<NodeId> remap(g.node_count(), 0);
  std::vector<std::int64_t> orig;
  std::uint32_t next = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (included[u]) {
      remap[u] = next++;
      orig.push_back(g.original_id(u));
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (included[e.src] && included[e.dst])
      edges.push_back({remap[e.src], remap[e.dst], e.p});
  }
  return ProbGraph(next, std::move(edges), {}, g.model(), std::move(orig));
}

RunRecord run(const RunConfig& cfg) {
  if (cfg.repeats == 0) throw ConfigError("repeats must be positive");
  if (cfg.budgets.empty()) throw ConfigError("no budgets configured");
  if (cfg.eval_rounds <= 0) throw ConfigError("eval rounds must be positive");

  const auto t_start = Clock::now();
  const auto deadline =
      t_start + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(cfg.time_limit_s));

  Prepared p = prepare(cfg);
  const ProbGraph& unified = p.unified;
  const NodeId s = p.source;
  const double offset = static_cast<double>(unified.spread_offset());

  RunRecord rec;
  rec.config = cfg;
  rec.n = unified.active_node_count();
  rec.m = unified.edge_count();

  {
    const std::uint64_t base_stream = derive_seed(cfg.master_seed, seed_salt::kEval, 0);
    if (cfg.eval == EvalMode::ExactOracle || cfg.eval == EvalMode::Auto) {
      try {
        rec.base_spread = exact_spread(unified, s) + offset;
        rec.base_exact = true;
      } catch (const std::exception&) {
        if (cfg.eval == EvalMode::ExactOracle) throw;
      }
    }
    if (!rec.base_exact)
      rec.base_spread = mcs_spread(unified, s, cfg.eval_rounds, base_stream).mean + offset;
  }

  for (std::uint32_t budget : cfg.budgets) {
    BudgetOut bo;
    bo.budget = budget;
    double residual_sum = 0.0;
    double wall_sum = 0.0;
    for (std::uint32_t r = 0; r < cfg.repeats && !rec.timed_out; ++r) {
      AlgoOptions opt;
      opt.theta = cfg.theta;
      opt.mcs_rounds = cfg.mcs_rounds;
      opt.mcs_mode = cfg.bg_mode;
      opt.top_up_budget = cfg.gr_top_up;
      opt.has_deadline = true;
      opt.deadline = deadline;
      const std::uint64_t repeat_seed =
          derive_seed(cfg.master_seed, seed_salt::kRepeat,
                      (static_cast<std::uint64_t>(budget) << 20) | r);
      RepeatOut ro;
      ro.repeat = r;
      try {
        BlockResult result = run_algorithm(cfg, unified, s, budget, repeat_seed, opt);
        ro.wall_ms = result.wall_ms;
        ro.warnings = result.warnings;
        for (NodeId u : result.blockers.nodes)
          ro.blocker_nodes.push_back(unified.original_id(u));
        for (const EdgePair& e : result.blockers.edges)
          ro.blocker_edges.emplace_back(unified.original_id(e.first),
                                        unified.original_id(e.second));
        ro.algo_residual = std::isnan(result.residual.mean)
                               ? std::numeric_limits<double>::quiet_NaN()
                               : result.residual.mean + offset;
        const std::uint64_t eval_stream =
            derive_seed(cfg.master_seed, seed_salt::kEval,
                        1 + ((static_cast<std::uint64_t>(budget) << 20) | r));
        auto [residual, exact] =
            evaluate_blockers(cfg, unified, s, result.blockers, eval_stream);
        ro.eval_residual = residual;
        ro.eval_exact = exact;
      } catch (const TimeoutError&) {
        rec.timed_out = true;
        ro.warnings.push_back("timeout");
        bo.repeats.push_back(ro);
        break;
      }
      residual_sum += ro.eval_residual;
      wall_sum += ro.wall_ms;
      bo.repeats.push_back(ro);
    }
    const std::size_t done = bo.repeats.size() - (rec.timed_out ? 1 : 0);
    if (done > 0) {
      bo.mean_residual = residual_sum / static_cast<double>(done);
      bo.mean_wall_ms = wall_sum / static_cast<double>(done);
    }
    rec.budgets.push_back(std::move(bo));
    if (rec.timed_out) break;
  }
  return rec;
}

namespace {

// Doubles render through a fixed shortest-roundtrip formatter so records are
// byte-stable across runs.
ordered_json num(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

} // namespace

std::string run_record_json(const RunRecord& rec) {
  const RunConfig& c = rec.config;
  ordered_json j;
  j["config"] = {
      {"input", c.dataset.path},
      {"directed", c.dataset.directed},
      {"prob", prob_model_name(c.dataset.prob_model)},
      {"model", model_name(c.model)},
      {"strategy", strategy_name(c.strategy)},
      {"algorithm", algorithm_name(c.algorithm)},
      {"budgets", c.budgets},
      {"theta", c.theta},
      {"mcs_rounds", c.mcs_rounds},
      {"eval_rounds", c.eval_rounds},
      {"eval",
       c.eval == EvalMode::Mcs ? "mcs" : (c.eval == EvalMode::ExactOracle ? "exact" : "auto")},
      {"rng_seed", c.master_seed},
      {"repeats", c.repeats},
      {"seeds", c.seeds.random ? ("random:" + std::to_string(c.seeds.k)) : c.seeds.file},
  };
  j["graph"] = {{"n", rec.n}, {"m", rec.m}};
  j["base_spread"] = num(rec.base_spread);
  j["base_exact"] = rec.base_exact;
  j["timed_out"] = rec.timed_out;
  ordered_json budgets = ordered_json::array();
  for (const BudgetOut& bo : rec.budgets) {
    ordered_json jb;
    jb["budget"] = bo.budget;
    ordered_json reps = ordered_json::array();
    for (const RepeatOut& ro : bo.repeats) {
      ordered_json jr;
      jr["repeat"] = ro.repeat;
      if (rec.config.strategy == BlockKind::Node) {
        jr["blocker_nodes"] = ro.blocker_nodes;
      } else {
        ordered_json edges = ordered_json::array();
        for (const auto& [u, v] : ro.blocker_edges) edges.push_back({u, v});
        jr["blocker_edges"] = edges;
      }
      jr["algo_residual"] = num(ro.algo_residual);
      jr["residual"] = num(ro.eval_residual);
      jr["residual_exact"] = ro.eval_exact;
      if (rec.config.include_timings) jr["wall_ms"] = ro.wall_ms;
      if (!ro.warnings.empty()) jr["warnings"] = ro.warnings;
      reps.push_back(std::move(jr));
    }
    jb["repeats"] = std::move(reps);
    jb["mean_residual"] = num(bo.mean_residual);
    if (rec.config.include_timings) jb["mean_wall_ms"] = bo.mean_wall_ms;
    budgets.push_back(std::move(jb));
  }
  j["results"] = std::move(budgets);
  return j.dump(2) + "\n";
}

void append_run_csv(const RunRecord& rec, const std::string& path) {
  const bool fresh = !std::filesystem::exists(path) ||
                     std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open csv for append: " + path);
  if (fresh)
    out << "algorithm,dataset,model,strategy,b,repeat,residual,wall_ms,blockers\n";
  char buf[64];
  for (const BudgetOut& bo : rec.budgets) {
    for (const RepeatOut& ro : bo.repeats) {
      std::string blockers;
      for (std::size_t i = 0; i < ro.blocker_nodes.size(); ++i) {
        if (i) blockers += '|';
        blockers += std::to_string(ro.blocker_nodes[i]);
      }
      for (std::size_t i = 0; i < ro.blocker_edges.size(); ++i) {
        if (i) blockers += '|';
        blockers += std::to_string(ro.blocker_edges[i].first) + ">" +
                    std::to_string(ro.blocker_edges[i].second);
      }
      out << algorithm_name(rec.config.algorithm) << ',' << rec.config.dataset.path
          << ',' << model_name(rec.config.model) << ','
          << strategy_name(rec.config.strategy) << ',' << bo.budget << ','
          << ro.repeat << ',';
      std::snprintf(buf, sizeof buf, "%.12g", ro.eval_residual);
      out << buf << ',';
      std::snprintf(buf, sizeof buf, "%.3f", ro.wall_ms);
      out << buf << ',' << blockers << '\n';
    }
  }
}

std::string inspect_delta(const RunConfig& cfg) {
  Prepared p = prepare(cfg);
  const std::uint64_t stream =
      derive_seed(derive_seed(cfg.master_seed, seed_salt::kRepeat, 0),
                  seed_salt::kGreedyRound, 0);
  DecreaseTable table =
      cfg.strategy == BlockKind::Node
          ? node_decrease_table(p.unified, p.source, cfg.theta, stream)
          : edge_decrease_table(p.unified, p.source, cfg.theta, stream);
  return table.to_csv(p.unified);
}

} // namespace infmin
