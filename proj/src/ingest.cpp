#include "infmin/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "infmin/rng.hpp"

namespace infmin {

namespace {

struct RawEdge {
  std::int64_t u, v;
  double p;
};

} // namespace

LoadResult load_edge_list(const std::string& path, bool directed, Model model) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);

  std::vector<RawEdge> raw;
  bool has_probs = false;
  bool first_data_line = true;
  std::uint32_t self_loops = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    std::int64_t u, v;
    if (!(ls >> u >> v))
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": malformed edge line: " + line);
    double p = 0.0;
    bool line_has_p = static_cast<bool>(ls >> p);
    std::string rest;
    if (ls >> rest)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": trailing tokens on edge line");
    if (first_data_line) {
      has_probs = line_has_p;
      first_data_line = false;
    } else if (line_has_p != has_probs) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": inconsistent column count");
    }
    if (line_has_p && !(p >= 0.0 && p <= 1.0))
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": probability out of range");
    if (u == v) {
      ++self_loops;
      continue;
    }
    raw.push_back({u, v, p});
    if (!directed) raw.push_back({v, u, p});
  }

  std::unordered_map<std::int64_t, NodeId> remap;
  std::vector<std::int64_t> original;
  auto intern = [&](std::int64_t id) -> NodeId {
    auto [it, inserted] = remap.try_emplace(id, static_cast<NodeId>(original.size()));
    if (inserted) original.push_back(id);
    return it->second;
  };

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& re : raw) {
    edges.push_back({intern(re.u), intern(re.v), re.p});
  }

  {
    std::vector<EdgePair> pairs;
    pairs.reserve(edges.size());
    for (const Edge& e : edges) pairs.emplace_back(e.src, e.dst);
    std::sort(pairs.begin(), pairs.end());
    auto dup = std::adjacent_find(pairs.begin(), pairs.end());
    if (dup != pairs.end()) {
      throw std::runtime_error(path + ": duplicate edge (" +
                               std::to_string(original[dup->first]) + "," +
                               std::to_string(original[dup->second]) + ")");
    }
  }

  const std::uint32_t n = static_cast<std::uint32_t>(original.size());
  LoadResult out{ProbGraph(n, std::move(edges), {}, model, std::move(original)),
                 has_probs, self_loops};
  return out;
}

ProbGraph assign_tr(const ProbGraph& g, std::uint64_t master_seed) {
  static constexpr double kLevels[3] = {0.1, 0.01, 0.001};
  Rng rng(derive_seed(master_seed, seed_salt::kAssign));
  std::vector<double> p(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) p[e] = kLevels[rng.next_below(3)];
  return g.with_probabilities(std::move(p));
}

ProbGraph assign_wc(const ProbGraph& g) {
  std::vector<double> p(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const NodeId v = g.edge(e).dst;
    p[e] = 1.0 / static_cast<double>(g.in_degree(v));
  }
  return g.with_probabilities(std::move(p));
}

DatasetStats stats(const ProbGraph& g) {
  DatasetStats st;
  st.n = g.node_count();
  st.m = g.edge_count();
  st.d_avg = st.n == 0 ? 0.0 : 2.0 * static_cast<double>(st.m) / static_cast<double>(st.n);
  for (NodeId u = 0; u < g.node_count(); ++u)
    st.d_max = std::max(st.d_max, g.in_degree(u) + g.out_degree(u));
  return st;
}

std::vector<NodeId> read_seed_file(const ProbGraph& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open seed file: " + path);
  std::unordered_map<std::int64_t, NodeId> remap;
  for (NodeId u = 0; u < g.node_count(); ++u) remap[g.original_id(u)] = u;
  std::vector<NodeId> seeds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    std::int64_t id;
    if (!(ls >> id))
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": malformed seed line: " + line);
    auto it = remap.find(id);
    if (it == remap.end())
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": seed id " + std::to_string(id) + " not in graph");
    seeds.push_back(it->second);
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return seeds;
}

std::vector<NodeId> random_seed_set(const ProbGraph& g, std::uint32_t k,
                                    std::uint64_t master_seed) {
  std::vector<NodeId> pool;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (g.is_removed(u)) continue;
    if (g.in_degree(u) + g.out_degree(u) == 0) continue; // isolated
    pool.push_back(u);
  }
  if (k > pool.size())
    throw std::runtime_error("random_seed_set: requested " + std::to_string(k) +
                             " seeds from " + std::to_string(pool.size()) +
                             " eligible nodes");
  Rng rng(derive_seed(master_seed, seed_salt::kSeedPick));
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint32_t j = i + rng.next_below(static_cast<std::uint32_t>(pool.size()) - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

ProbGraph synthetic_graph(std::uint32_t n, std::uint32_t m_target, std::uint32_t core,
                          std::uint32_t core_out, std::uint64_t master_seed) {
  if (n < 2) throw std::invalid_argument("synthetic_graph: need at least 2 nodes");
  if (core > n) core = n;
  Rng rng(derive_seed(master_seed, seed_salt::kExtract));
  std::unordered_set<std::uint64_t> used;
  std::vector<Edge> edges;
  edges.reserve(m_target);
  auto add_edge = [&](NodeId u, NodeId v) {
    if (u == v) return false;
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
    if (!used.insert(key).second) return false;
    edges.push_back({u, v, 0.0});
    return true;
  };
  // dense core
  for (NodeId u = 0; u < core && edges.size() < m_target; ++u) {
    std::uint32_t added = 0;
    std::uint32_t attempts = 0;
    while (added < core_out && attempts < 16 * core_out && edges.size() < m_target) {
      ++attempts;
      added += add_edge(u, rng.next_below(core));
    }
  }
  // uniform remainder
  std::uint64_t attempts = 0;
  const std::uint64_t max_attempts = 32ULL * m_target + 1024;
  while (edges.size() < m_target && attempts < max_attempts) {
    ++attempts;
    add_edge(rng.next_below(n), rng.next_below(n));
  }
  return ProbGraph(n, std::move(edges), {}, Model::IC);
}

void write_edge_list(const ProbGraph& g, const std::string& path,
                     bool with_probabilities) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  char buf[96];
  for (const Edge& e : g.edges()) {
    if (with_probabilities) {
      std::snprintf(buf, sizeof buf, "%lld %lld %.12g\n",
                    static_cast<long long>(g.original_id(e.src)),
                    static_cast<long long>(g.original_id(e.dst)), e.p);
    } else {
      std::snprintf(buf, sizeof buf, "%lld %lld\n",
                    static_cast<long long>(g.original_id(e.src)),
                    static_cast<long long>(g.original_id(e.dst)));
    }
    out << buf;
  }
}

} // namespace infmin
