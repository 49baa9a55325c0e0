#include "infmin/decrease.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "detail.hpp"
#include "dom_core.hpp"

namespace infmin {

std::vector<double> DecreaseTable::deltas() const {
  std::vector<double> d(raw_counts.size());
  for (std::size_t i = 0; i < raw_counts.size(); ++i) d[i] = delta(i);
  return d;
}

std::string DecreaseTable::to_csv(const ProbGraph& g) const {
  std::vector<std::size_t> idx;
  for (std::size_t c = 0; c < raw_counts.size(); ++c) {
    if (!excluded.empty() && excluded[c]) continue;
    // synthetic merged seed edges are not blockable candidates
    if (kind == BlockKind::Edge &&
        g.original_id(g.edge(static_cast<EdgeId>(c)).src) == -1)
      continue;
    idx.push_back(c);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (raw_counts[a] != raw_counts[b]) return raw_counts[a] > raw_counts[b];
    return a < b;
  });
  std::string out = "candidate,delta\n";
  char line[96];
  for (std::size_t c : idx) {
    if (kind == BlockKind::Node) {
      std::snprintf(line, sizeof line, "%lld,%.12g",
                    static_cast<long long>(g.original_id(static_cast<NodeId>(c))),
                    delta(c));
    } else {
      const Edge& e = g.edge(static_cast<EdgeId>(c));
      std::snprintf(line, sizeof line, "%lld->%lld,%.12g",
                    static_cast<long long>(g.original_id(e.src)),
                    static_cast<long long>(g.original_id(e.dst)), delta(c));
    }
    out += line;
    out += '\n';
  }
  return out;
}

namespace {

struct CsrView {
  std::uint32_t n;
  const std::uint32_t* out_begin;
  const std::int32_t* out_to;
  const std::uint32_t* in_begin;
  const std::int32_t* in_to;

  std::uint32_t node_count() const { return n; }
  std::uint32_t out_size(std::int32_t u) const { return out_begin[u + 1] - out_begin[u]; }
  std::int32_t out_target(std::int32_t u, std::uint32_t k) const {
    return out_to[out_begin[u] + k];
  }
  std::uint32_t in_size(std::int32_t v) const { return in_begin[v + 1] - in_begin[v]; }
  std::int32_t in_source(std::int32_t v, std::uint32_t k) const {
    return in_to[in_begin[v] + k];
  }
};

// Reusable buffers for one worker's edge-split worlds.
struct EdgeWorldScratch {
  std::vector<EdgeId> virt_edge;        // rank -> parent edge
  std::vector<std::int32_t> edge_rank;  // parent edge -> rank (-1 dead)
  std::vector<std::uint32_t> out_begin, in_begin;
  std::vector<std::int32_t> out_to, in_to;

  CsrView build(const ProbGraph& g, const std::uint8_t* live) {
    const std::uint32_t n = g.node_count();
    const std::uint32_t m = g.edge_count();
    virt_edge.clear();
    edge_rank.assign(m, -1);
    for (EdgeId e = 0; e < m; ++e) {
      if (live[e]) {
        edge_rank[e] = static_cast<std::int32_t>(virt_edge.size());
        virt_edge.push_back(e);
      }
    }
    const std::uint32_t L = static_cast<std::uint32_t>(virt_edge.size());
    const std::uint32_t total = n + L;
    out_begin.assign(total + 1, 0);
    in_begin.assign(total + 1, 0);
    for (std::uint32_t r = 0; r < L; ++r) {
      const Edge& e = g.edge(virt_edge[r]);
      ++out_begin[e.src + 1];   // u -> w
      ++out_begin[n + r + 1];   // w -> v
      ++in_begin[n + r + 1];    // u -> w
      ++in_begin[e.dst + 1];    // w -> v
    }
    for (std::uint32_t i = 0; i < total; ++i) {
      out_begin[i + 1] += out_begin[i];
      in_begin[i + 1] += in_begin[i];
    }
    out_to.resize(2 * L);
    in_to.resize(2 * L);
    std::vector<std::uint32_t> opos(out_begin.begin(), out_begin.end() - 1);
    std::vector<std::uint32_t> ipos(in_begin.begin(), in_begin.end() - 1);
    for (std::uint32_t r = 0; r < L; ++r) {
      const Edge& e = g.edge(virt_edge[r]);
      const std::int32_t w = static_cast<std::int32_t>(n + r);
      out_to[opos[e.src]++] = w;
      out_to[static_cast<std::size_t>(opos[w]++)] = static_cast<std::int32_t>(e.dst);
      in_to[static_cast<std::size_t>(ipos[w]++)] = static_cast<std::int32_t>(e.src);
      in_to[ipos[e.dst]++] = w;
    }
    return CsrView{total, out_begin.data(), out_to.data(), in_begin.data(), in_to.data()};
  }
};

struct Worker {
  detail::Scratch sample;
  detail::DomScratch dom;
  EdgeWorldScratch edge;
  std::vector<std::int64_t> acc;
};

void check_args(const ProbGraph& g, NodeId s, std::int64_t begin, std::int64_t end) {
  if (end <= begin) throw std::invalid_argument("decrease table: theta must be positive");
  if (s >= g.node_count() || g.is_removed(s))
    throw std::invalid_argument("decrease table: bad source");
}

void node_rounds_worker(const ProbGraph& g, NodeId s, std::int64_t begin,
                        std::int64_t end, std::uint64_t stream, Worker& w) {
  const bool lt = g.model() == Model::LT;
  for (std::int64_t i = begin; i < end; ++i) {
    detail::sample_into(g, derive_seed(stream, static_cast<std::uint64_t>(i)), w.sample);
    detail::LiveWorldView view{g, w.sample.live.data()};
    const std::uint32_t count =
        lt ? detail::unit_in_degree_tree(view, static_cast<std::int32_t>(s), w.dom)
           : detail::lengauer_tarjan(view, static_cast<std::int32_t>(s), w.dom);
    detail::accumulate_subtree_sizes(w.dom, count, [](std::int32_t) { return true; });
    for (std::uint32_t k = 1; k < count; ++k) {
      const std::int32_t v = w.dom.vertex[k];
      w.acc[static_cast<std::size_t>(v)] += w.dom.sizes[v];
    }
  }
}

void edge_rounds_worker(const ProbGraph& g, NodeId s, std::int64_t begin,
                        std::int64_t end, std::uint64_t stream, Worker& w) {
  const bool lt = g.model() == Model::LT;
  const std::uint32_t n = g.node_count();
  for (std::int64_t i = begin; i < end; ++i) {
    detail::sample_into(g, derive_seed(stream, static_cast<std::uint64_t>(i)), w.sample);
    const CsrView view = w.edge.build(g, w.sample.live.data());
    const std::uint32_t count =
        lt ? detail::unit_in_degree_tree(view, static_cast<std::int32_t>(s), w.dom)
           : detail::lengauer_tarjan(view, static_cast<std::int32_t>(s), w.dom);
    detail::accumulate_subtree_sizes(
        w.dom, count, [n](std::int32_t v) { return static_cast<std::uint32_t>(v) < n; });
    for (std::uint32_t k = 1; k < count; ++k) {
      const std::int32_t v = w.dom.vertex[k];
      if (static_cast<std::uint32_t>(v) < n) continue;
      const EdgeId parent_edge = w.edge.virt_edge[static_cast<std::uint32_t>(v) - n];
      w.acc[parent_edge] += w.dom.sizes[v];
    }
  }
}

template <class RoundsWorker>
DecreaseTable run_rounds(const ProbGraph& g, NodeId s, std::int64_t begin,
                         std::int64_t end, std::uint64_t master_seed,
                         std::size_t table_size, BlockKind kind, bool parallel,
                         RoundsWorker worker_fn) {
  check_args(g, s, begin, end);
  const std::uint64_t stream = derive_seed(master_seed, seed_salt::kWorlds);

  DecreaseTable t;
  t.kind = kind;
  t.theta = end - begin;
  t.raw_counts.assign(table_size, 0);

  int threads = 1;
#ifdef _OPENMP
  if (parallel) threads = omp_get_max_threads();
#else
  (void)parallel;
#endif

  std::vector<Worker> workers(threads);
  for (Worker& w : workers) w.acc.assign(table_size, 0);

#ifdef _OPENMP
  if (threads > 1) {
#pragma omp parallel
    {
      const int team = omp_get_num_threads();
      const int tid = omp_get_thread_num();
      const std::int64_t total = end - begin;
      const std::int64_t chunk = (total + team - 1) / team;
      const std::int64_t lo = begin + chunk * tid;
      const std::int64_t hi = std::min(end, lo + chunk);
      if (lo < hi) worker_fn(g, s, lo, hi, stream, workers[tid]);
    }
  } else
#endif
  {
    worker_fn(g, s, begin, end, stream, workers[0]);
  }

  for (const Worker& w : workers) {
    for (std::size_t c = 0; c < table_size; ++c) t.raw_counts[c] += w.acc[c];
  }

  if (kind == BlockKind::Node) {
    t.excluded.assign(table_size, 0);
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
      if (u == s || g.is_seed(u) || g.is_removed(u)) t.excluded[u] = 1;
    }
  }
  return t;
}

} // namespace

DecreaseTable node_decrease_rounds(const ProbGraph& g, NodeId s, std::int64_t begin,
                                   std::int64_t end, std::uint64_t master_seed) {
  return run_rounds(g, s, begin, end, master_seed, g.node_count(), BlockKind::Node,
                    true, node_rounds_worker);
}

DecreaseTable node_decrease_table(const ProbGraph& g, NodeId s, std::int64_t theta,
                                  std::uint64_t master_seed) {
  return node_decrease_rounds(g, s, 0, theta, master_seed);
}

DecreaseTable node_decrease_table_serial(const ProbGraph& g, NodeId s,
                                         std::int64_t theta, std::uint64_t master_seed) {
  return run_rounds(g, s, 0, theta, master_seed, g.node_count(), BlockKind::Node,
                    false, node_rounds_worker);
}

DecreaseTable edge_decrease_rounds(const ProbGraph& g, NodeId s, std::int64_t begin,
                                   std::int64_t end, std::uint64_t master_seed) {
  return run_rounds(g, s, begin, end, master_seed, g.edge_count(), BlockKind::Edge,
                    true, edge_rounds_worker);
}

DecreaseTable edge_decrease_table(const ProbGraph& g, NodeId s, std::int64_t theta,
                                  std::uint64_t master_seed) {
  return edge_decrease_rounds(g, s, 0, theta, master_seed);
}

DecreaseTable edge_decrease_table_serial(const ProbGraph& g, NodeId s,
                                         std::int64_t theta, std::uint64_t master_seed) {
  return run_rounds(g, s, 0, theta, master_seed, g.edge_count(), BlockKind::Edge,
                    false, edge_rounds_worker);
}

EdgeSampledWorld build_edge_world(const SampledWorld& w) {
  if (!w.parent) throw std::invalid_argument("build_edge_world: world has no parent");
  const ProbGraph& g = *w.parent;
  EdgeWorldScratch scratch;
  scratch.build(g, w.live.data());
  EdgeSampledWorld out;
  out.parent = &g;
  out.original_nodes = g.node_count();
  out.virtual_edges = std::move(scratch.virt_edge);
  out.out_begin = std::move(scratch.out_begin);
  out.in_begin = std::move(scratch.in_begin);
  out.out_to = std::move(scratch.out_to);
  out.in_to = std::move(scratch.in_to);
  return out;
}

std::int64_t chernoff_theta(double l, double eps, std::uint64_t n,
                            double opt_lower_bound) {
  if (!(l > 0.0)) throw std::invalid_argument("chernoff_theta: l must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("chernoff_theta: eps must be positive");
  if (n < 2) throw std::invalid_argument("chernoff_theta: n must be at least 2");
  if (!(opt_lower_bound > 0.0))
    throw std::invalid_argument("chernoff_theta: opt bound must be positive");
  const double theta = l * (2.0 + eps) * static_cast<double>(n) *
                       std::log(static_cast<double>(n)) / (eps * eps * opt_lower_bound);
  return static_cast<std::int64_t>(std::ceil(theta));
}

} // namespace infmin
