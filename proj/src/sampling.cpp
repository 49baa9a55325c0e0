#include "infmin/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "detail.hpp"

namespace infmin {

SampledWorld sample_world(const ProbGraph& g, std::uint64_t round_seed) {
  detail::Scratch s;
  const std::uint32_t live_count = detail::sample_into(g, round_seed, s);
  SampledWorld w;
  w.parent = &g;
  w.round_seed = round_seed;
  w.live.assign(s.live.begin(), s.live.begin() + g.edge_count());
  w.live_count = live_count;
  return w;
}

std::uint32_t reachable_count(const SampledWorld& w, NodeId s) {
  const ProbGraph& g = *w.parent;
  if (s >= g.node_count() || g.is_removed(s))
    throw std::invalid_argument("reachable_count: source not in world");
  detail::Scratch scratch;
  scratch.ensure(g.node_count(), g.edge_count());
  return detail::bfs_live(g, w.live.data(), s, scratch);
}

namespace {

SpreadEstimate mcs_impl(const ProbGraph& g, NodeId s, std::int64_t rounds,
                        std::uint64_t master_seed, bool keep_counts, bool parallel) {
  if (rounds <= 0) throw std::invalid_argument("mcs_spread: rounds must be positive");
  if (s >= g.node_count() || g.is_removed(s))
    throw std::invalid_argument("mcs_spread: bad source");
  const std::uint64_t stream = derive_seed(master_seed, seed_salt::kWorlds);
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(rounds));

#ifdef _OPENMP
  if (parallel) {
    const int threads = omp_get_max_threads();
    std::vector<detail::Scratch> scratch(threads);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rounds; ++i) {
      detail::Scratch& sc = scratch[omp_get_thread_num()];
      detail::sample_into(g, derive_seed(stream, static_cast<std::uint64_t>(i)), sc);
      counts[static_cast<std::size_t>(i)] = detail::bfs_live(g, sc.live.data(), s, sc);
    }
  } else
#else
  (void)parallel;
#endif
  {
    detail::Scratch sc;
    for (std::int64_t i = 0; i < rounds; ++i) {
      detail::sample_into(g, derive_seed(stream, static_cast<std::uint64_t>(i)), sc);
      counts[static_cast<std::size_t>(i)] = detail::bfs_live(g, sc.live.data(), s, sc);
    }
  }

  std::uint64_t total = 0;
  for (std::uint32_t c : counts) total += c;
  SpreadEstimate est;
  est.mean = static_cast<double>(total) / static_cast<double>(rounds);
  est.rounds = rounds;
  if (keep_counts) est.per_round_counts = std::move(counts);
  return est;
}

} // namespace

SpreadEstimate mcs_spread(const ProbGraph& g, NodeId s, std::int64_t rounds,
                          std::uint64_t master_seed, bool keep_counts) {
  return mcs_impl(g, s, rounds, master_seed, keep_counts, true);
}

SpreadEstimate mcs_spread_serial(const ProbGraph& g, NodeId s, std::int64_t rounds,
                                 std::uint64_t master_seed, bool keep_counts) {
  return mcs_impl(g, s, rounds, master_seed, keep_counts, false);
}

// ---------------------------------------------------------------------------
// Exact expected spread.
// ---------------------------------------------------------------------------

namespace {

constexpr double kProbEps = 1e-15;

struct BlockMasks {
  std::vector<std::uint8_t> node; // 1 = blocked
  std::vector<std::uint8_t> edge;
};

BlockMasks make_masks(const ProbGraph& g, std::span<const NodeId> bn,
                      std::span<const EdgeId> be) {
  BlockMasks m;
  m.node.assign(g.node_count(), 0);
  m.edge.assign(g.edge_count(), 0);
  for (NodeId u : bn) {
    if (u >= g.node_count()) throw std::invalid_argument("blocked node out of range");
    m.node[u] = 1;
  }
  for (EdgeId e : be) {
    if (e >= g.edge_count()) throw std::invalid_argument("blocked edge out of range");
    m.edge[e] = 1;
  }
  return m;
}

bool edge_usable(const ProbGraph& g, const BlockMasks& m, EdgeId e) {
  const Edge& ed = g.edge(e);
  return !m.edge[e] && !m.node[ed.src] && !m.node[ed.dst] && ed.p > kProbEps;
}

// Reachability over every usable edge: an over-approximation of what any
// configuration can reach, used to prune irrelevant uncertain edges/nodes.
std::vector<std::uint8_t> reach_any(const ProbGraph& g, const BlockMasks& m, NodeId s) {
  std::vector<std::uint8_t> reach(g.node_count(), 0);
  std::vector<NodeId> queue{s};
  reach[s] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (EdgeId e : g.out_edges(queue[i])) {
      if (!edge_usable(g, m, e)) continue;
      const NodeId v = g.edge(e).dst;
      if (!reach[v]) {
        reach[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return reach;
}

double exact_ic(const ProbGraph& g, NodeId s, const BlockMasks& m, int max_uncertain) {
  const auto reach = reach_any(g, m, s);

  // 0 = absent, 1 = deterministic, >=2 = uncertain slot + 2
  std::vector<std::uint32_t> state(g.edge_count(), 0);
  std::vector<double> probs;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!edge_usable(g, m, e)) continue;
    const Edge& ed = g.edge(e);
    if (ed.p >= 1.0 - kProbEps) {
      state[e] = 1;
    } else if (reach[ed.src]) { // uncertain edges from unreachable sources never fire
      state[e] = 2 + static_cast<std::uint32_t>(probs.size());
      probs.push_back(ed.p);
    }
  }
  const std::size_t k = probs.size();
  if (k > static_cast<std::size_t>(max_uncertain))
    throw std::runtime_error("exact enumeration infeasible: " + std::to_string(k) +
                             " uncertain edges exceed cap " + std::to_string(max_uncertain));

  detail::Scratch sc;
  sc.ensure(g.node_count(), g.edge_count());
  double total = 0.0;
  const std::uint64_t configs = 1ULL << k;
  for (std::uint64_t cfg = 0; cfg < configs; ++cfg) {
    double pr = 1.0;
    for (std::size_t i = 0; i < k; ++i)
      pr *= (cfg >> i & 1) ? probs[i] : 1.0 - probs[i];

    const std::uint32_t ep = sc.next_epoch();
    sc.queue.clear();
    sc.queue.push_back(s);
    sc.mark[s] = ep;
    std::uint32_t reached = 1;
    for (std::size_t i = 0; i < sc.queue.size(); ++i) {
      for (EdgeId e : g.out_edges(sc.queue[i])) {
        const std::uint32_t st = state[e];
        if (st == 0) continue;
        if (st >= 2 && !(cfg >> (st - 2) & 1)) continue;
        const NodeId v = g.edge(e).dst;
        if (sc.mark[v] != ep) {
          sc.mark[v] = ep;
          sc.queue.push_back(v);
          ++reached;
        }
      }
    }
    total += pr * static_cast<double>(reached);
  }
  return total;
}

// LT configurations: each node independently keeps one usable in-edge (with
// its probability) or none (with the leftover mass).
double exact_lt(const ProbGraph& g, NodeId s, const BlockMasks& m, int max_uncertain) {
  const auto reach = reach_any(g, m, s);

  struct Option {
    std::int64_t edge; // -1 = none
    double p;
  };
  struct NodeChoices {
    NodeId node;
    std::vector<Option> options;
  };
  std::vector<NodeChoices> varying;
  std::vector<std::int64_t> selected(g.node_count(), -1);

  double config_count = 1.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v == s || m.node[v] || g.is_removed(v) || !reach[v]) continue;
    std::vector<Option> opts;
    double sum = 0.0;
    for (EdgeId e : g.in_edges(v)) {
      if (!edge_usable(g, m, e)) continue;
      opts.push_back({static_cast<std::int64_t>(e), g.edge(e).p});
      sum += g.edge(e).p;
    }
    if (sum > 1.0 + 1e-9)
      throw std::runtime_error("exact_spread: LT in-probability sum exceeds 1 at node " +
                               std::to_string(v));
    if (1.0 - sum > kProbEps) opts.push_back({-1, 1.0 - sum});
    if (opts.empty()) continue;
    if (opts.size() == 1) {
      selected[v] = opts[0].edge; // forced choice, probability 1
      continue;
    }
    config_count *= static_cast<double>(opts.size());
    varying.push_back({v, std::move(opts)});
  }

  const double cap = std::ldexp(1.0, max_uncertain);
  if (config_count > cap)
    throw std::runtime_error("exact enumeration infeasible: LT configuration count exceeds cap");

  detail::Scratch sc;
  sc.ensure(g.node_count(), g.edge_count());
  std::vector<std::size_t> idx(varying.size(), 0);
  double total = 0.0;
  while (true) {
    double pr = 1.0;
    for (std::size_t i = 0; i < varying.size(); ++i) {
      const Option& o = varying[i].options[idx[i]];
      selected[varying[i].node] = o.edge;
      pr *= o.p;
    }

    const std::uint32_t ep = sc.next_epoch();
    sc.queue.clear();
    sc.queue.push_back(s);
    sc.mark[s] = ep;
    std::uint32_t reached = 1;
    for (std::size_t i = 0; i < sc.queue.size(); ++i) {
      for (EdgeId e : g.out_edges(sc.queue[i])) {
        const NodeId v = g.edge(e).dst;
        if (selected[v] != static_cast<std::int64_t>(e)) continue;
        if (sc.mark[v] != ep) {
          sc.mark[v] = ep;
          sc.queue.push_back(v);
          ++reached;
        }
      }
    }
    total += pr * static_cast<double>(reached);

    // odometer step
    std::size_t d = 0;
    while (d < idx.size()) {
      if (++idx[d] < varying[d].options.size()) break;
      idx[d] = 0;
      ++d;
    }
    if (d == idx.size()) break;
  }
  return total;
}

} // namespace

double exact_spread_blocked(const ProbGraph& g, NodeId s,
                            std::span<const NodeId> blocked_nodes,
                            std::span<const EdgeId> blocked_edges, int max_uncertain) {
  if (s >= g.node_count() || g.is_removed(s))
    throw std::invalid_argument("exact_spread: bad source");
  const BlockMasks m = make_masks(g, blocked_nodes, blocked_edges);
  if (m.node[s]) throw std::invalid_argument("exact_spread: source is blocked");
  return g.model() == Model::IC ? exact_ic(g, s, m, max_uncertain)
                                : exact_lt(g, s, m, max_uncertain);
}

double exact_spread(const ProbGraph& g, NodeId s, int max_uncertain) {
  return exact_spread_blocked(g, s, {}, {}, max_uncertain);
}

// ---------------------------------------------------------------------------
// Lazy cascade simulation.
// ---------------------------------------------------------------------------

CascadeSimulator::CascadeSimulator(const ProbGraph& g)
    : g_(g),
      visited_(g.node_count(), 0),
      choice_epoch_(g.node_count(), 0),
      choice_(g.node_count(), -1) {
  queue_.reserve(g.node_count());
}

std::int64_t CascadeSimulator::lt_choice(NodeId v, Rng& rng, NodeId skip_node,
                                         std::int64_t skip_edge) {
  if (choice_epoch_[v] == epoch_) return choice_[v];
  choice_epoch_[v] = epoch_;
  const double x = rng.next_double();
  double cum = 0.0;
  std::int64_t chosen = -1;
  for (EdgeId e : g_.in_edges(v)) {
    if (static_cast<std::int64_t>(e) == skip_edge) continue;
    if (g_.edge(e).src == skip_node) continue;
    cum += g_.edge(e).p;
    if (x < cum) {
      chosen = static_cast<std::int64_t>(e);
      break;
    }
  }
  choice_[v] = chosen;
  return chosen;
}

std::uint32_t CascadeSimulator::run(NodeId s, Rng& rng, NodeId skip_node,
                                    std::int64_t skip_edge) {
  if (++epoch_ == 0) {
    std::fill(visited_.begin(), visited_.end(), 0);
    std::fill(choice_epoch_.begin(), choice_epoch_.end(), 0);
    epoch_ = 1;
  }
  queue_.clear();
  queue_.push_back(s);
  visited_[s] = epoch_;
  std::uint32_t activated = 1;
  const bool ic = g_.model() == Model::IC;
  for (std::size_t i = 0; i < queue_.size(); ++i) {
    const NodeId u = queue_[i];
    for (EdgeId e : g_.out_edges(u)) {
      if (static_cast<std::int64_t>(e) == skip_edge) continue;
      const NodeId v = g_.edge(e).dst;
      if (v == skip_node || visited_[v] == epoch_) continue;
      bool fires;
      if (ic) {
        fires = rng.next_double() < g_.edge(e).p;
      } else {
        fires = lt_choice(v, rng, skip_node, skip_edge) == static_cast<std::int64_t>(e);
      }
      if (fires) {
        visited_[v] = epoch_;
        queue_.push_back(v);
        ++activated;
      }
    }
  }
  return activated;
}

} // namespace infmin
