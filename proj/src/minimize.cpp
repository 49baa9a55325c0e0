#include "infmin/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "detail.hpp"

namespace infmin {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_deadline(const AlgoOptions& opt, const char* who) {
  if (opt.has_deadline && Clock::now() > opt.deadline)
    throw TimeoutError(std::string(who) + ": time limit exceeded");
}

std::vector<NodeId> node_candidates(const ProbGraph& g) {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (!g.is_seed(u) && !g.is_removed(u)) out.push_back(u);
  }
  return out;
}

std::uint64_t edge_stream_key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.src) << 32) | e.dst;
}

// Merged out-edges of a synthetic unified seed stand for several original
// edges at once, so they are not valid single-edge blockers.
bool blockable_edge(const ProbGraph& g, EdgeId e) {
  return g.original_id(g.edge(e).src) != -1;
}

std::size_t blockable_edge_count(const ProbGraph& g) {
  std::size_t n = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) n += blockable_edge(g, e);
  return n;
}

SpreadEstimate residual_estimate(const ProbGraph& g, NodeId s, std::int64_t rounds,
                                 std::uint64_t master_seed) {
  return mcs_spread(g, s, rounds, derive_seed(master_seed, seed_salt::kResidual));
}

// argmax over raw integer counts, ties to the lowest candidate id. Returns -1
// if nothing is eligible.
template <class Eligible>
std::int64_t argmax_raw(const std::vector<std::int64_t>& raw, Eligible eligible) {
  std::int64_t best = -1;
  std::int64_t best_raw = std::numeric_limits<std::int64_t>::min();
  for (std::size_t c = 0; c < raw.size(); ++c) {
    if (!eligible(c)) continue;
    if (raw[c] > best_raw) {
      best_raw = raw[c];
      best = static_cast<std::int64_t>(c);
    }
  }
  return best;
}

} // namespace

// ---------------------------------------------------------------------------
// Shared-world decrease tables.
// ---------------------------------------------------------------------------

DecreaseTable crn_decrease_table(const ProbGraph& g, NodeId s, std::int64_t theta,
                                 std::uint64_t master_seed, BlockKind kind) {
  if (theta <= 0) throw std::invalid_argument("crn_decrease_table: theta must be positive");
  if (s >= g.node_count() || g.is_removed(s))
    throw std::invalid_argument("crn_decrease_table: bad source");
  const std::uint64_t stream = derive_seed(master_seed, seed_salt::kWorlds);
  const std::size_t table_size =
      kind == BlockKind::Node ? g.node_count() : g.edge_count();

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  struct Worker {
    detail::Scratch sc;
    std::vector<std::int64_t> acc;
    std::vector<NodeId> reached;
    std::vector<std::uint8_t> reach_mask;
  };
  std::vector<Worker> workers(threads);
  for (auto& w : workers) w.acc.assign(table_size, 0);

  auto do_world = [&](std::int64_t i, Worker& w) {
    detail::sample_into(g, derive_seed(stream, static_cast<std::uint64_t>(i)), w.sc);
    const std::uint32_t full = detail::bfs_live(g, w.sc.live.data(), s, w.sc);
    w.reached.assign(w.sc.queue.begin(), w.sc.queue.end());
    if (kind == BlockKind::Node) {
      for (NodeId u : w.reached) {
        if (u == s) continue;
        const std::uint32_t without =
            detail::bfs_live(g, w.sc.live.data(), s, w.sc, /*skip_node=*/u);
        w.acc[u] += static_cast<std::int64_t>(full) - static_cast<std::int64_t>(without);
      }
    } else {
      w.reach_mask.assign(g.node_count(), 0);
      for (NodeId u : w.reached) w.reach_mask[u] = 1;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        // dead edges and edges leaving unreached nodes cannot change reachability
        if (!w.sc.live[e] || !w.reach_mask[g.edge(e).src]) continue;
        const std::uint32_t without =
            detail::bfs_live(g, w.sc.live.data(), s, w.sc,
                             /*skip_node=*/static_cast<NodeId>(-1),
                             /*skip_edge=*/static_cast<std::int64_t>(e));
        w.acc[e] += static_cast<std::int64_t>(full) - static_cast<std::int64_t>(without);
      }
    }
  };

#ifdef _OPENMP
#pragma omp parallel
  {
    const int team = omp_get_num_threads();
    const int tid = omp_get_thread_num();
    const std::int64_t chunk = (theta + team - 1) / team;
    const std::int64_t lo = chunk * tid;
    const std::int64_t hi = std::min<std::int64_t>(theta, lo + chunk);
    for (std::int64_t i = lo; i < hi; ++i) do_world(i, workers[tid]);
  }
#else
  for (std::int64_t i = 0; i < theta; ++i) do_world(i, workers[0]);
#endif

  DecreaseTable t;
  t.kind = kind;
  t.theta = theta;
  t.raw_counts.assign(table_size, 0);
  for (const auto& w : workers)
    for (std::size_t c = 0; c < table_size; ++c) t.raw_counts[c] += w.acc[c];
  if (kind == BlockKind::Node) {
    t.excluded.assign(table_size, 0);
    for (NodeId u = 0; u < g.node_count(); ++u)
      if (u == s || g.is_seed(u) || g.is_removed(u)) t.excluded[u] = 1;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Baseline greedy.
// ---------------------------------------------------------------------------

namespace {

// One round of fresh-world estimation: independent lazy simulations per
// candidate; returns the summed activation counts per candidate id.
std::vector<std::int64_t> fresh_candidate_totals(const ProbGraph& g, NodeId s,
                                                 std::int64_t rounds,
                                                 std::uint64_t round_master,
                                                 BlockKind kind) {
  const std::size_t table_size =
      kind == BlockKind::Node ? g.node_count() : g.edge_count();
  std::vector<std::int64_t> totals(table_size, 0);
  const std::uint64_t cand_stream = derive_seed(round_master, seed_salt::kCandidate);

  std::vector<std::size_t> cands;
  if (kind == BlockKind::Node) {
    for (NodeId u = 0; u < g.node_count(); ++u)
      if (u != s && !g.is_seed(u) && !g.is_removed(u)) cands.push_back(u);
  } else {
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (blockable_edge(g, e)) cands.push_back(e);
  }

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::vector<CascadeSimulator> sims;
  sims.reserve(threads);
  for (int t = 0; t < threads; ++t) sims.emplace_back(g);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (std::size_t idx = 0; idx < cands.size(); ++idx) {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    CascadeSimulator& sim = sims[tid];
    const std::size_t c = cands[idx];
    const std::uint64_t key = kind == BlockKind::Node
                                  ? static_cast<std::uint64_t>(c)
                                  : edge_stream_key(g.edge(static_cast<EdgeId>(c)));
    Rng rng(derive_seed(cand_stream, key));
    std::int64_t total = 0;
    if (kind == BlockKind::Node) {
      for (std::int64_t r = 0; r < rounds; ++r)
        total += sim.run(s, rng, static_cast<NodeId>(c));
    } else {
      for (std::int64_t r = 0; r < rounds; ++r)
        total += sim.run(s, rng, CascadeSimulator::kNoNode, static_cast<std::int64_t>(c));
    }
    totals[c] = total;
  }
  return totals;
}

} // namespace

BlockResult baseline_greedy(const ProbGraph& g, NodeId s, std::uint32_t b,
                            std::uint64_t master_seed, BlockKind kind,
                            const AlgoOptions& opt) {
  const auto t0 = Clock::now();
  if (s >= g.node_count() || g.is_removed(s))
    throw std::invalid_argument("baseline_greedy: bad source");
  const std::int64_t rounds = opt.mcs_rounds;
  if (rounds <= 0) throw std::invalid_argument("baseline_greedy: rounds must be positive");

  BlockResult res;
  res.algorithm = "bg";
  res.blockers.kind = kind;
  res.blockers.budget = b;
  res.rounds_used = rounds;

  ProbGraph cur = g;
  const std::size_t pool0 = kind == BlockKind::Node ? node_candidates(g).size()
                                                    : blockable_edge_count(g);
  if (b > pool0) {
    res.warnings.push_back("budget " + std::to_string(b) + " exceeds candidate count " +
                           std::to_string(pool0) + "; blocking all candidates");
  }

  for (std::uint32_t round = 0; round < b; ++round) {
    check_deadline(opt, "baseline_greedy");
    const std::uint64_t round_master =
        derive_seed(master_seed, seed_salt::kGreedyRound, round);

    std::int64_t chosen = -1;
    double chosen_delta = 0.0;
    if (opt.mcs_mode == McsMode::CommonRandomNumbers) {
      DecreaseTable table = crn_decrease_table(cur, s, rounds, round_master, kind);
      if (opt.round_hook) opt.round_hook(static_cast<int>(round), table);
      if (kind == BlockKind::Node) {
        chosen = argmax_raw(table.raw_counts,
                            [&](std::size_t c) { return !table.excluded[c]; });
      } else {
        chosen = argmax_raw(table.raw_counts, [&](std::size_t c) {
          return blockable_edge(cur, static_cast<EdgeId>(c));
        });
      }
      if (chosen >= 0) chosen_delta = table.delta(static_cast<std::size_t>(chosen));
    } else {
      // Fresh worlds: commit the candidate with the lowest estimated residual
      // spread; the decrease recorded in the trace is relative to a base
      // estimate from its own stream.
      std::vector<std::int64_t> totals =
          fresh_candidate_totals(cur, s, rounds, round_master, kind);
      std::int64_t best_total = std::numeric_limits<std::int64_t>::max();
      if (kind == BlockKind::Node) {
        for (NodeId u = 0; u < cur.node_count(); ++u) {
          if (u == s || cur.is_seed(u) || cur.is_removed(u)) continue;
          if (totals[u] < best_total) {
            best_total = totals[u];
            chosen = u;
          }
        }
      } else {
        for (EdgeId e = 0; e < cur.edge_count(); ++e) {
          if (!blockable_edge(cur, e)) continue;
          if (totals[e] < best_total) {
            best_total = totals[e];
            chosen = e;
          }
        }
      }
      if (chosen >= 0) {
        const SpreadEstimate base = mcs_spread(
            cur, s, rounds, derive_seed(round_master, seed_salt::kWorlds));
        chosen_delta =
            base.mean - static_cast<double>(best_total) / static_cast<double>(rounds);
      }
    }

    if (chosen < 0) break; // candidate pool exhausted
    TraceEntry te;
    te.round = static_cast<std::int32_t>(round);
    te.delta = chosen_delta;
    if (kind == BlockKind::Node) {
      const NodeId u = static_cast<NodeId>(chosen);
      te.node = u;
      res.blockers.nodes.push_back(u);
      const NodeId one[] = {u};
      cur = cur.remove_nodes(one);
    } else {
      const Edge& e = cur.edge(static_cast<EdgeId>(chosen));
      te.edge = {e.src, e.dst};
      res.blockers.edges.push_back(te.edge);
      const EdgePair one[] = {te.edge};
      cur = cur.remove_edges(one);
    }
    res.trace.push_back(te);
  }

  std::sort(res.blockers.nodes.begin(), res.blockers.nodes.end());
  std::sort(res.blockers.edges.begin(), res.blockers.edges.end());
  res.residual = residual_estimate(cur, s, rounds, master_seed);
  res.wall_ms = ms_since(t0);
  return res;
}

// ---------------------------------------------------------------------------
// Advanced greedy.
// ---------------------------------------------------------------------------

BlockResult advanced_greedy(const ProbGraph& g, NodeId s, std::uint32_t b,
                            std::uint64_t master_seed, BlockKind kind,
                            const AlgoOptions& opt) {
  const auto t0 = Clock::now();
  if (s >= g.node_count() || g.is_removed(s))
    throw std::invalid_argument("advanced_greedy: bad source");

  BlockResult res;
  res.algorithm = "ag";
  res.blockers.kind = kind;
  res.blockers.budget = b;
  res.rounds_used = opt.theta;

  ProbGraph cur = g;
  const std::size_t pool0 = kind == BlockKind::Node ? node_candidates(g).size()
                                                    : blockable_edge_count(g);
  if (b > pool0) {
    res.warnings.push_back("budget " + std::to_string(b) + " exceeds candidate count " +
                           std::to_string(pool0) + "; blocking all candidates");
  }

  for (std::uint32_t round = 0; round < b; ++round) {
    check_deadline(opt, "advanced_greedy");
    const std::uint64_t round_master =
        derive_seed(master_seed, seed_salt::kGreedyRound, round);

    std::int64_t chosen = -1;
    if (kind == BlockKind::Node) {
      DecreaseTable table = node_decrease_table(cur, s, opt.theta, round_master);
      if (opt.round_hook) opt.round_hook(static_cast<int>(round), table);
      chosen = argmax_raw(table.raw_counts,
                          [&](std::size_t c) { return !table.excluded[c]; });
      if (chosen >= 0) {
        TraceEntry te;
        te.round = static_cast<std::int32_t>(round);
        te.node = static_cast<NodeId>(chosen);
        te.delta = table.delta(static_cast<std::size_t>(chosen));
        res.trace.push_back(te);
        res.blockers.nodes.push_back(te.node);
        const NodeId one[] = {te.node};
        cur = cur.remove_nodes(one);
      }
    } else {
      if (cur.edge_count() == 0) break;
      DecreaseTable table = edge_decrease_table(cur, s, opt.theta, round_master);
      if (opt.round_hook) opt.round_hook(static_cast<int>(round), table);
      chosen = argmax_raw(table.raw_counts, [&](std::size_t c) {
        return blockable_edge(cur, static_cast<EdgeId>(c));
      });
      if (chosen >= 0) {
        const Edge& e = cur.edge(static_cast<EdgeId>(chosen));
        TraceEntry te;
        te.round = static_cast<std::int32_t>(round);
        te.edge = {e.src, e.dst};
        te.delta = table.delta(static_cast<std::size_t>(chosen));
        res.trace.push_back(te);
        res.blockers.edges.push_back(te.edge);
        const EdgePair one[] = {te.edge};
        cur = cur.remove_edges(one);
      }
    }
    if (chosen < 0) break;
  }

  std::sort(res.blockers.nodes.begin(), res.blockers.nodes.end());
  std::sort(res.blockers.edges.begin(), res.blockers.edges.end());
  res.residual = residual_estimate(cur, s, opt.theta, master_seed);
  res.wall_ms = ms_since(t0);
  return res;
}

// ---------------------------------------------------------------------------
// Greedy replace.
// ---------------------------------------------------------------------------

BlockResult greedy_replace(const ProbGraph& g, NodeId s, std::uint32_t b,
                           std::uint64_t master_seed, const AlgoOptions& opt) {
  const auto t0 = Clock::now();
  if (s >= g.node_count() || g.is_removed(s))
    throw std::invalid_argument("greedy_replace: bad source");

  BlockResult res;
  res.algorithm = "gr";
  res.blockers.kind = BlockKind::Node;
  res.blockers.budget = b;
  res.rounds_used = opt.theta;

  std::vector<NodeId> cb; // out-neighbors of the seed, ascending
  for (EdgeId e : g.out_edges(s)) cb.push_back(g.edge(e).dst);
  std::sort(cb.begin(), cb.end());
  cb.erase(std::unique(cb.begin(), cb.end()), cb.end());

  if (cb.empty()) {
    res.warnings.push_back("seed has no out-neighbors; nothing to block");
    res.residual = residual_estimate(g, s, opt.theta, master_seed);
    res.wall_ms = ms_since(t0);
    return res;
  }

  int round_counter = 0;
  auto next_round_master = [&]() {
    return derive_seed(master_seed, seed_salt::kGreedyRound,
                       static_cast<std::uint64_t>(round_counter++));
  };

  // Phase 1: greedy picks restricted to the out-neighbors.
  std::vector<NodeId> order; // insertion order
  ProbGraph cur = g;
  const std::uint32_t k = std::min<std::uint32_t>(b, static_cast<std::uint32_t>(cb.size()));
  for (std::uint32_t i = 0; i < k; ++i) {
    check_deadline(opt, "greedy_replace");
    DecreaseTable table = node_decrease_table(cur, s, opt.theta, next_round_master());
    if (opt.round_hook) opt.round_hook(round_counter - 1, table);
    std::int64_t best = -1;
    std::int64_t best_raw = std::numeric_limits<std::int64_t>::min();
    for (NodeId u : cb) {
      if (std::find(order.begin(), order.end(), u) != order.end()) continue;
      if (table.raw_counts[u] > best_raw) {
        best_raw = table.raw_counts[u];
        best = u;
      }
    }
    const NodeId x = static_cast<NodeId>(best);
    TraceEntry te;
    te.round = round_counter - 1;
    te.node = x;
    te.delta = table.delta(x);
    res.trace.push_back(te);
    order.push_back(x);
    const NodeId one[] = {x};
    cur = cur.remove_nodes(one);
  }

  // Phase 2: in reverse insertion order, drop a pick and let every node
  // compete for the slot; stop as soon as a pick defends itself.
  std::vector<NodeId> blocked = order;
  for (std::size_t idx = order.size(); idx-- > 0;) {
    check_deadline(opt, "greedy_replace");
    const NodeId u = order[idx];
    std::vector<NodeId> without;
    for (NodeId v : blocked)
      if (v != u) without.push_back(v);
    ProbGraph probe = g.remove_nodes(without);
    DecreaseTable table = node_decrease_table(probe, s, opt.theta, next_round_master());
    if (opt.round_hook) opt.round_hook(round_counter - 1, table);
    const std::int64_t x = argmax_raw(
        table.raw_counts, [&](std::size_t c) { return !table.excluded[c]; });
    without.push_back(static_cast<NodeId>(x));
    blocked = std::move(without);
    TraceEntry te;
    te.round = round_counter - 1;
    te.replacement = true;
    te.node = static_cast<NodeId>(x);
    te.delta = table.delta(static_cast<std::size_t>(x));
    res.trace.push_back(te);
    if (static_cast<NodeId>(x) == u) break; // the pick defended its slot
  }

  // Optional top-up when the seed's out-degree is below the budget.
  if (opt.top_up_budget && blocked.size() < b) {
    ProbGraph topped = g.remove_nodes(blocked);
    while (blocked.size() < b) {
      check_deadline(opt, "greedy_replace");
      DecreaseTable table = node_decrease_table(topped, s, opt.theta, next_round_master());
      if (opt.round_hook) opt.round_hook(round_counter - 1, table);
      const std::int64_t x = argmax_raw(
          table.raw_counts, [&](std::size_t c) { return !table.excluded[c]; });
      if (x < 0) break;
      TraceEntry te;
      te.round = round_counter - 1;
      te.node = static_cast<NodeId>(x);
      te.delta = table.delta(static_cast<std::size_t>(x));
      res.trace.push_back(te);
      blocked.push_back(static_cast<NodeId>(x));
      const NodeId one[] = {static_cast<NodeId>(x)};
      topped = topped.remove_nodes(one);
    }
  }

  std::sort(blocked.begin(), blocked.end());
  res.blockers.nodes = blocked;
  res.residual =
      residual_estimate(g.remove_nodes(res.blockers.nodes), s, opt.theta, master_seed);
  res.wall_ms = ms_since(t0);
  return res;
}

// ---------------------------------------------------------------------------
// Heuristics.
// ---------------------------------------------------------------------------

BlockResult random_blockers(const ProbGraph& g, std::uint32_t b,
                            std::uint64_t master_seed, BlockKind kind) {
  const auto t0 = Clock::now();
  BlockResult res;
  res.algorithm = "rand";
  res.blockers.kind = kind;
  res.blockers.budget = b;

  Rng rng(derive_seed(master_seed, seed_salt::kSeedPick));
  if (kind == BlockKind::Node) {
    std::vector<NodeId> cands = node_candidates(g);
    const std::uint32_t take = std::min<std::uint32_t>(b, cands.size());
    for (std::uint32_t i = 0; i < take; ++i) {
      const std::uint32_t j =
          i + rng.next_below(static_cast<std::uint32_t>(cands.size()) - i);
      std::swap(cands[i], cands[j]);
    }
    cands.resize(take);
    std::sort(cands.begin(), cands.end());
    res.blockers.nodes = std::move(cands);
  } else {
    std::vector<EdgeId> cands;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (blockable_edge(g, e)) cands.push_back(e);
    const std::uint32_t take = std::min<std::uint32_t>(b, cands.size());
    for (std::uint32_t i = 0; i < take; ++i) {
      const std::uint32_t j =
          i + rng.next_below(static_cast<std::uint32_t>(cands.size()) - i);
      std::swap(cands[i], cands[j]);
    }
    for (std::uint32_t i = 0; i < take; ++i) {
      const Edge& e = g.edge(cands[i]);
      res.blockers.edges.emplace_back(e.src, e.dst);
    }
    std::sort(res.blockers.edges.begin(), res.blockers.edges.end());
  }
  res.residual.mean = std::numeric_limits<double>::quiet_NaN();
  res.wall_ms = ms_since(t0);
  return res;
}

BlockResult out_degree_blockers(const ProbGraph& g, std::uint32_t b, BlockKind kind) {
  const auto t0 = Clock::now();
  BlockResult res;
  res.algorithm = "outdeg";
  res.blockers.kind = kind;
  res.blockers.budget = b;

  if (kind == BlockKind::Node) {
    std::vector<NodeId> cands = node_candidates(g);
    std::sort(cands.begin(), cands.end(), [&](NodeId a, NodeId c) {
      if (g.out_degree(a) != g.out_degree(c)) return g.out_degree(a) > g.out_degree(c);
      return a < c;
    });
    cands.resize(std::min<std::size_t>(b, cands.size()));
    std::sort(cands.begin(), cands.end());
    res.blockers.nodes = std::move(cands);
  } else {
    std::vector<EdgeId> cands;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (blockable_edge(g, e)) cands.push_back(e);
    std::sort(cands.begin(), cands.end(), [&](EdgeId a, EdgeId c) {
      const Edge& ea = g.edge(a);
      const Edge& ec = g.edge(c);
      if (g.out_degree(ea.dst) != g.out_degree(ec.dst))
        return g.out_degree(ea.dst) > g.out_degree(ec.dst);
      if (ea.src != ec.src) return ea.src < ec.src;
      return ea.dst < ec.dst;
    });
    cands.resize(std::min<std::size_t>(b, cands.size()));
    for (EdgeId e : cands) res.blockers.edges.emplace_back(g.edge(e).src, g.edge(e).dst);
    std::sort(res.blockers.edges.begin(), res.blockers.edges.end());
  }
  res.residual.mean = std::numeric_limits<double>::quiet_NaN();
  res.wall_ms = ms_since(t0);
  return res;
}

// ---------------------------------------------------------------------------
// Exhaustive search.
// ---------------------------------------------------------------------------

namespace {

// Number of subsets of size <= b, saturating at cap + 1.
std::int64_t subset_count(std::size_t n, std::uint32_t b, std::int64_t cap) {
  std::int64_t total = 0;
  double binom = 1.0;
  for (std::uint32_t k = 0; k <= b && k <= n; ++k) {
    if (k > 0) binom = binom * static_cast<double>(n - k + 1) / static_cast<double>(k);
    if (binom > static_cast<double>(cap) || (total += static_cast<std::int64_t>(binom)) > cap)
      return cap + 1;
  }
  return total;
}

} // namespace

BlockResult exact_search(const ProbGraph& g, NodeId s, std::uint32_t b, BlockKind kind,
                         const AlgoOptions& opt) {
  const auto t0 = Clock::now();
  if (s >= g.node_count() || g.is_removed(s))
    throw std::invalid_argument("exact_search: bad source");

  BlockResult res;
  res.algorithm = "exact";
  res.blockers.kind = kind;
  res.blockers.budget = b;
  res.residual_exact = true;

  std::vector<std::uint32_t> cands;
  if (kind == BlockKind::Node) {
    for (NodeId u : node_candidates(g)) cands.push_back(u);
  } else {
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (blockable_edge(g, e)) cands.push_back(e);
  }
  if (subset_count(cands.size(), b, opt.exact_subset_cap) > opt.exact_subset_cap)
    throw std::runtime_error("exact_search: subset count exceeds cap " +
                             std::to_string(opt.exact_subset_cap));

  double best_spread = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> best_subset;
  std::int64_t evaluated = 0;

  std::vector<std::uint32_t> pick;
  std::vector<NodeId> node_subset;
  std::vector<EdgeId> edge_subset;
  auto evaluate = [&]() {
    if ((++evaluated & 0xff) == 0) check_deadline(opt, "exact_search");
    double spread;
    if (kind == BlockKind::Node) {
      node_subset.assign(pick.begin(), pick.end());
      spread = exact_spread_blocked(g, s, node_subset, {}, opt.exact_uncertain_cap);
    } else {
      edge_subset.assign(pick.begin(), pick.end());
      spread = exact_spread_blocked(g, s, {}, edge_subset, opt.exact_uncertain_cap);
    }
    if (spread < best_spread) {
      best_spread = spread;
      best_subset = pick;
    }
  };

  const std::uint32_t kmax = std::min<std::uint32_t>(b, static_cast<std::uint32_t>(cands.size()));
  for (std::uint32_t k = 0; k <= kmax; ++k) {
    // combinations of k candidate indices in lexicographic order
    std::vector<std::uint32_t> idx(k);
    for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      pick.clear();
      for (std::uint32_t i : idx) pick.push_back(cands[i]);
      evaluate();
      // advance
      std::int32_t pos = static_cast<std::int32_t>(k) - 1;
      while (pos >= 0 && idx[pos] == cands.size() - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (std::uint32_t i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }

  if (kind == BlockKind::Node) {
    for (std::uint32_t c : best_subset) res.blockers.nodes.push_back(c);
    std::sort(res.blockers.nodes.begin(), res.blockers.nodes.end());
  } else {
    for (std::uint32_t c : best_subset) {
      const Edge& e = g.edge(c);
      res.blockers.edges.emplace_back(e.src, e.dst);
    }
    std::sort(res.blockers.edges.begin(), res.blockers.edges.end());
  }
  res.residual.mean = best_spread;
  res.residual.rounds = 0;
  res.wall_ms = ms_since(t0);
  return res;
}

} // namespace infmin
